// Command-line front end. Exit codes: 0 success, 1 mathematical failure, 2 input error.
#include "lsh/complexes.hpp"
#include "lsh/corpus.hpp"
#include "lsh/dga.hpp"
#include "lsh/error.hpp"
#include "lsh/homology.hpp"
#include "lsh/io.hpp"
#include "lsh/lefschetz.hpp"
#include "lsh/surgery.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace lsh;

namespace {

std::string count(std::size_t k, const std::string& noun)
{
    return std::to_string(k) + " " + noun + (k == 1 ? "" : "s");
}

struct WindowArgs {
    int min_deg = 0;
    int max_deg = 0;
    int max_len = 0;
    bool allow_truncation = false;

    Window window() const
    {
        Window w;
        w.min_deg = min_deg;
        w.max_deg = max_deg;
        w.max_len = max_len;
        w.allow_truncation = allow_truncation;
        return w;
    }
};

void add_window(CLI::App* cmd, WindowArgs& w)
{
    cmd->add_option("--min-deg", w.min_deg, "lowest degree of the window")->required();
    cmd->add_option("--max-deg", w.max_deg, "highest degree of the window")->required();
    cmd->add_option("--max-len", w.max_len, "word length bound (required when gradings allow unbounded words)");
    cmd->add_flag("--allow-truncation", w.allow_truncation, "accept a TRUNCATED guard verdict");
}

struct ReportArgs {
    std::string format = "text";
    std::string json_out;
    int threads = 0;
};

void add_report(CLI::App* cmd, ReportArgs& r)
{
    cmd->add_option("--format", r.format, "stdout report: text or json")->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--json-out", r.json_out, "also write the JSON report to this path");
    cmd->add_option("--threads", r.threads, "rank workers (default LSH_THREADS or hardware)");
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write " + path);
    out << text;
}

void report(const std::string& title, const GradedChainComplex& c, const ReportArgs& r)
{
    BettiTable t = betti(c, r.threads);
    std::string json = io::betti_json(title, c, t);
    std::cout << (r.format == "json" ? json : io::betti_text(title, c, t));
    if (!r.json_out.empty())
        write_file(r.json_out, json);
}

// Grading and d^2 problems of a document DGA: grading issues are input errors.
void require_valid(const Dga& dga)
{
    DgaReport rep = check_d_squared(dga);
    for (const auto& i : rep.issues)
        if (i.kind == "grading")
            throw InputError("generator " + i.generator + ": " + i.detail);
    if (!rep.ok())
        throw MathError("d^2 != 0 at generator " + rep.issues.front().generator + ": " + rep.issues.front().detail);
}

Dga load_dga(const std::string& path, bool allow_partial = false)
{
    Dga dga = io::parse_dga(io::read_file(path));
    if (!allow_partial && io::is_partial(dga))
        throw InputError(path + " is a partial document (gradings only); it cannot be used for this command");
    require_valid(dga);
    return dga;
}

int cmd_validate(const std::string& path)
{
    std::string text = io::read_file(path);
    std::string format;
    try {
        auto j = nlohmann::json::parse(text);
        if (j.is_object() && j.contains("format") && j["format"].is_string())
            format = j["format"].get<std::string>();
    } catch (const nlohmann::json::parse_error&) {
        io::parse_dga(text);  // reports the syntax error with its line
    }
    if (format == "lsh-filling/1") {
        FillingModel f = io::parse_filling(text);
        std::cout << "ok: filling with " << count(f.orbits.size(), "orbit") << " and "
                  << count(f.morse.size(), "Morse generator") << "\n";
        return 0;
    }
    if (format == "lsh-ainf/1") {
        AinfSpec s = io::parse_ainf(text);
        std::cout << "ok: " << count(s.k, "sphere") << ", " << count(s.points.size(), "intersection point") << ", n = " << s.n
                  << "\n";
        return 0;
    }
    if (format == "lsh-morphism/1") {
        io::MorphismDocument m = io::parse_morphism(text);
        require_valid(*m.source);
        require_valid(*m.target);
        MorphismReport rep = check_morphism(m.map);
        if (!rep.ok) {
            std::cout << "FAIL: not a chain map at " << rep.generator << ", defect "
                      << format_element(m.target->alphabet, rep.defect) << "\n";
            return 1;
        }
        std::cout << "ok: chain map on " << count(m.source->alphabet.size(), "generator") << "\n";
        return 0;
    }
    Dga dga = io::parse_dga(text);
    DgaReport rep = check_d_squared(dga);
    bool grading_issue = false;
    for (const auto& i : rep.issues) {
        std::cout << "FAIL " << i.kind << " at " << i.generator << ": " << i.detail << "\n";
        grading_issue = grading_issue || i.kind == "grading";
    }
    if (!rep.ok())
        return grading_issue ? 2 : 1;
    std::cout << "ok: " << count(dga.alphabet.size(), "generator") << " on " << count(dga.components(), "component")
              << ", d^2 = 0" << (io::is_partial(dga) ? " (partial document)" : "")
              << "\n";
    return 0;
}

std::vector<Q> parse_values(const std::string& list)
{
    std::vector<Q> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_rational(item));
    if (out.empty())
        throw InputError("--values needs at least one rational");
    return out;
}

FillingModel load_filling(const std::string& spec, int max_deg)
{
    if (spec.rfind("ball:", 0) == 0) {
        int n = 0;
        try {
            n = std::stoi(spec.substr(5));
        } catch (const std::exception&) {
            throw InputError("--filling ball:<n> needs an integer n");
        }
        return builtin_ball_filling(n, std::max(max_deg + 4, 2 * n + 4));
    }
    return io::parse_filling(io::read_file(spec));
}

void print_dga_issues(const DgaReport& rep)
{
    for (const auto& i : rep.issues)
        std::cerr << "d^2 check: " << i.kind << " at " << i.generator << ": " << i.detail << "\n";
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"lsh: Legendrian surgery homology calculator"};
    app.require_subcommand(1);

    std::string file;

    auto* validate = app.add_subcommand("validate", "parse a document and run its consistency checks");
    validate->add_option("document", file, "DGA, filling, A-infinity or morphism document")->required();

    std::string complex_kind = "cyc", aug_file;
    WindowArgs hw;
    ReportArgs hr;
    auto* homology = app.add_subcommand("homology", "Betti table of a complex built from a DGA");
    homology->add_option("dga", file)->required();
    homology->add_option("--complex", complex_kind, "lin, cyc, hoplus, ho, mcyc or m")
        ->check(CLI::IsMember({"lin", "cyc", "hoplus", "ho", "mcyc", "m"}));
    homology->add_option("--augmentation", aug_file, "augmentation document for --complex lin");
    add_window(homology, hw);
    add_report(homology, hr);

    std::string filling = "ball:3", theory = "sh", counts_file;
    WindowArgs sw;
    ReportArgs sr;
    auto* surgery = app.add_subcommand("surgery", "complexes of the filling after Legendrian surgery");
    surgery->add_option("dga", file)->required();
    surgery->add_option("--filling", filling, "ball:<n> or a filling document")->required();
    surgery->add_option("--theory", theory, "ch, sh+ or sh")->check(CLI::IsMember({"ch", "sh+", "sh"}))->required();
    surgery->add_option("--counts", counts_file, "surgery count document (default: all counts zero)");
    add_window(surgery, sw);
    add_report(surgery, sr);

    std::string values;
    auto* augs = app.add_subcommand("augmentations", "all augmentations with values in a finite set");
    augs->add_option("dga", file)->required();
    augs->add_option("--values", values, "comma-separated rationals, e.g. -1,0,1")->required();

    bool check = false;
    auto* morphism = app.add_subcommand("morphism", "DGA morphism documents");
    morphism->add_option("document", file)->required();
    morphism->add_flag("--check", check, "verify f d = d f on every generator")->required();

    int t_order = -1, dim = 0;
    std::string emit = "dga";
    ReportArgs lr;
    auto* lefschetz = app.add_subcommand("lefschetz", "Lefschetz fibration data to DGA and Hochschild complex");
    lefschetz->add_option("ainf", file)->required();
    lefschetz->add_option("--t-order", t_order, "truncation order N")->required()->check(CLI::NonNegativeNumber);
    lefschetz->add_option("--dim", dim, "ambient dimension n (must match the document when it sets n)");
    lefschetz->add_option("--emit", emit, "dga, hochschild or dictionary-check")
        ->check(CLI::IsMember({"dga", "hochschild", "dictionary-check"}));
    add_report(lefschetz, lr);

    std::string example;
    int example_dim = 3;
    auto* examples = app.add_subcommand("examples", "bundled example documents");
    examples->require_subcommand(1);
    examples->add_subcommand("list", "names of the bundled examples");
    auto* ex_emit = examples->add_subcommand("emit", "print a bundled example document");
    ex_emit->add_option("name", example)->required();
    ex_emit->add_option("--dim", example_dim, "n for parametrized examples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*validate)
            return cmd_validate(file);

        if (*homology) {
            Dga dga = load_dga(file);
            Window w = hw.window();
            GradedChainComplex c;
            std::string title;
            if (complex_kind == "lin") {
                Augmentation eps{std::vector<Q>(dga.alphabet.size())};
                if (!aug_file.empty())
                    eps = io::parse_augmentation(io::read_file(aug_file), dga);
                else if (!is_augmentation(dga, eps))
                    throw InputError("the zero augmentation is not valid for this DGA; pass --augmentation");
                c = linearize(dga, eps);
                c.window_min = w.min_deg;
                c.window_max = w.max_deg;
                title = "LH^lin";
            } else if (complex_kind == "cyc") {
                c = build_cyclic_complex(dga, w);
                title = "LH^cyc";
            } else if (complex_kind == "hoplus") {
                c = build_hoplus_complex(dga, w);
                title = "LH^Ho+";
            } else if (complex_kind == "ho") {
                c = build_ho_complex(dga, w);
                title = "LH^Ho";
            } else if (complex_kind == "mcyc") {
                c = build_module_Mcyc(dga, w);
                title = "M^cyc";
            } else {
                c = build_module_M(dga, w);
                title = "M";
            }
            report(title, c, hr);
            return 0;
        }

        if (*surgery) {
            Dga dga = load_dga(file);
            FillingModel f = load_filling(filling, sw.max_deg);
            if (f.n != dga.n)
                throw InputError("filling has n = " + std::to_string(f.n) + " but the DGA has ambient_dim " +
                                 std::to_string(dga.n));
            SurgeryCounts counts;
            if (!counts_file.empty())
                counts = io::parse_counts(io::read_file(counts_file), f, dga);
            Window w = sw.window();
            if (theory == "ch")
                report("LCH", build_lch_surgery(f, dga, counts, w), sr);
            else if (theory == "sh+")
                report("SH+", build_shplus_surgery(f, dga, counts, w), sr);
            else
                report("SH", build_sh_surgery(f, dga, counts, w), sr);
            return 0;
        }

        if (*augs) {
            Dga dga = load_dga(file);
            auto found = enumerate_augmentations(dga, parse_values(values));
            std::cout << count(found.size(), "augmentation") << "\n";
            for (const auto& eps : found) {
                std::string line;
                for (uint32_t id = 0; id < dga.alphabet.size(); ++id)
                    if (dga.alphabet[id].grading == 0)
                        line += (line.empty() ? "" : "  ") + dga.alphabet[id].name + "=" + to_string(eps.value[id]);
                std::cout << (line.empty() ? "(no grading-0 generators)" : line) << "\n";
            }
            return 0;
        }

        if (*morphism) {
            io::MorphismDocument m = io::parse_morphism(io::read_file(file));
            require_valid(*m.source);
            require_valid(*m.target);
            MorphismReport rep = check_morphism(m.map);
            if (!rep.ok) {
                std::cout << "FAIL: f(dc) != d(f(c)) at " << rep.generator << "; defect "
                          << format_element(m.target->alphabet, rep.defect) << "\n";
                return 1;
            }
            std::cout << "ok: chain map\n";
            return 0;
        }

        if (*lefschetz) {
            AinfSpec spec = io::parse_ainf(io::read_file(file), dim);
            CurvedAinf cat = build_curved_category(spec, t_order);
            if (emit == "dga") {
                Dga dga = lefschetz_dga(spec, dual_h_terms(spec), t_order);
                DgaReport rep = check_d_squared(dga);
                std::cout << io::emit_dga(dga);
                if (!rep.ok()) {
                    print_dga_issues(rep);
                    return 1;
                }
                return 0;
            }
            if (emit == "hochschild") {
                GradedChainComplex hh = hochschild_complex(cat);
                report("HH", hh, lr);
                return 0;
            }
            AinfReport ar = check_curved_ainf(cat);
            for (const auto& v : ar.unit_violations)
                std::cout << "FAIL unit: " << v << "\n";
            for (std::size_t i = 0; i < ar.failures.size() && i < 10; ++i) {
                const auto& f = ar.failures[i];
                std::string in;
                for (const auto& x : f.inputs)
                    in += (in.empty() ? "" : ", ") + morphism_label(spec, x);
                std::cout << "FAIL relation: coefficient " << to_string(f.value) << " of "
                          << morphism_label(spec, f.output) << " in the relation on (" << in << ")\n";
            }
            GradedChainComplex hh = hochschild_complex(cat);
            GradedChainComplex ho = lefschetz_ho_complex(cat);
            DictionaryReport dr = verify_dictionary(cat, hh, ho);
            std::cout << "dictionary: " << (dr.ok ? "pass" : "FAIL " + dr.detail) << "\n";
            return ar.ok() && dr.ok ? 0 : 1;
        }

        if (*examples) {
            if (example.empty()) {
                for (const auto& e : corpus::entries())
                    std::cout << e.name << "  [" << e.kind << "]  " << e.summary << "\n";
                return 0;
            }
            std::cout << corpus::emit(example, example_dim);
            return 0;
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const MathError& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
