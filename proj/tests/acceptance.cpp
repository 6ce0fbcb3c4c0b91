// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 when any fails.
#include "lsh/complexes.hpp"
#include "lsh/corpus.hpp"
#include "lsh/dga.hpp"
#include "lsh/homology.hpp"
#include "lsh/lefschetz.hpp"
#include "lsh/surgery.hpp"

#include "oracles.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace lsh;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    int failures = 0;

    void fail(const std::string& why)
    {
        if (pass)
            detail = why;
        pass = false;
        ++failures;
    }
};

Window window(int lo, int hi, int max_len = 0, bool truncate = false)
{
    Window w;
    w.min_deg = lo;
    w.max_deg = hi;
    w.max_len = max_len;
    w.allow_truncation = truncate;
    return w;
}

std::string power_label(const std::string& open, int k)
{
    return open + "a" + (k == 1 ? "" : "^" + std::to_string(k)) + ")";
}

std::set<std::string> labels_at(const GradedChainComplex& c, int d)
{
    const auto& b = c.basis_at(d);
    return {b.begin(), b.end()};
}

std::string show(const std::set<std::string>& s)
{
    std::string out = "{";
    for (const auto& x : s)
        out += (out.size() > 1 ? ", " : "") + x;
    return out + "}";
}

void expect_labels(Outcome& o, const std::string& what, const GradedChainComplex& c, int d,
                   const std::set<std::string>& want)
{
    auto got = labels_at(c, d);
    if (got != want)
        o.fail(what + " degree " + std::to_string(d) + ": basis " + show(got) + ", expected " + show(want));
}

void expect_rank(Outcome& o, const std::string& what, const GradedChainComplex& c, int d, long long want)
{
    long long got = oracle::homology_rank(c, d);
    if (got != want)
        o.fail(what + " degree " + std::to_string(d) + ": rank " + std::to_string(got) + ", expected " +
               std::to_string(want));
}

// Ranks of SH(T*S^n) read off the unknot tables.
long long sh_cotangent(int n, int j)
{
    if (j == 0)
        return 1;
    for (int r = 1; r * (n - 1) <= j; ++r) {
        if (n % 2 == 0 && r % 2 == 0)
            continue;
        if (j == r * (n - 1) || j == r * (n - 1) + 1)
            return 1;
    }
    return 0;
}

Outcome unknot_tables()
{
    Outcome o;
    for (int n = 2; n <= 5; ++n) {
        Dga u = corpus::unknot(n);
        auto cyc = build_cyclic_complex(u, window(0, 12));
        auto ho = build_ho_complex(u, window(0, 12));
        std::string tag = "n=" + std::to_string(n);
        for (int d = 0; d <= 12; ++d) {
            std::set<std::string> want_cyc, want_ho;
            long long ho_rank = 0;
            if (d == 0) {
                want_ho.insert("tau_1");
                ++ho_rank;
            }
            for (int k = 1; k * (n - 1) <= d; ++k) {
                bool survives = n % 2 == 1 || k % 2 == 1;
                if (k * (n - 1) == d) {
                    if (survives)
                        want_cyc.insert(power_label("(", k));
                    want_ho.insert(power_label("chk(", k));
                    ho_rank += survives;
                }
                if (k * (n - 1) + 1 == d) {
                    want_ho.insert(power_label("hat(", k));
                    ho_rank += survives;
                }
            }
            expect_labels(o, tag + " LH^cyc", cyc, d, want_cyc);
            expect_labels(o, tag + " LH^Ho", ho, d, want_ho);
            expect_rank(o, tag + " LH^cyc", cyc, d, static_cast<long long>(want_cyc.size()));
            expect_rank(o, tag + " LH^Ho", ho, d, ho_rank);
        }
        // Arrows: hat(a^k) -> 2 chk(a^k) for k even when n is even, nothing else.
        for (const auto& [d, m] : ho.boundary) {
            for (int c = 0; c < m.cols; ++c) {
                const std::string& src = ho.basis_at(d)[static_cast<std::size_t>(c)];
                std::map<std::string, Q> image;
                for (const auto& [r, v] : m.columns[static_cast<std::size_t>(c)])
                    image[ho.basis_at(d - 1)[static_cast<std::size_t>(r)]] = v;
                std::map<std::string, Q> want;
                for (int k = 2; n % 2 == 0 && k * (n - 1) + 1 <= d; k += 2)
                    if (k * (n - 1) + 1 == d && src == power_label("hat(", k))
                        want[power_label("chk(", k)] = 2;
                if (d <= 13 && image != want)
                    o.fail(tag + " LH^Ho differential of " + src + " differs from the table arrows");
            }
        }
    }
    return o;
}

Outcome sh_ranks(bool plus)
{
    Outcome o;
    for (int n = 2; n <= 5; ++n) {
        FillingModel f = builtin_ball_filling(n, 16);
        Dga u = corpus::unknot(n);
        auto c = plus ? build_shplus_surgery(f, u, {}, window(-1, 11)) : build_sh_surgery(f, u, {}, window(-1, 11));
        for (int d = 0; d <= 10; ++d) {
            long long want = sh_cotangent(n, d);
            if (plus && d == 0)
                want = 0;
            if (plus && d == n + 1)
                want = 1;
            expect_rank(o, std::string(plus ? "SH+" : "SH") + " n=" + std::to_string(n), c, d, want);
        }
    }
    return o;
}

Outcome ch_after_surgery()
{
    Outcome o;
    for (int n = 2; n <= 3; ++n) {
        FillingModel f = builtin_ball_filling(n, 14);
        auto c = build_lch_surgery(f, corpus::unknot(n), {}, window(-1, 11));
        std::string tag = "LCH n=" + std::to_string(n);
        for (const auto& [d, m] : c.boundary)
            if (!m.is_zero())
                o.fail(tag + " has a nonzero differential out of degree " + std::to_string(d));
        for (int d = 0; d <= 10; ++d) {
            std::set<std::string> want;
            for (int k = 1; n - 1 + 2 * k <= d; ++k)
                if (n - 1 + 2 * k == d)
                    want.insert("<g^" + std::to_string(k) + ">");
            for (int j = 1; j * (n - 1) <= d; ++j)
                if (j * (n - 1) == d && (n % 2 == 1 || j % 2 == 1))
                    want.insert(power_label("(", j));
            expect_labels(o, tag, c, d, want);
            expect_rank(o, tag, c, d, static_cast<long long>(want.size()));
        }
    }
    return o;
}

Outcome ball_acyclicity()
{
    Outcome o;
    for (int n = 2; n <= 6; ++n) {
        int top = 2 * n + 8;
        FillingModel f = builtin_ball_filling(n, top + 4);
        auto sh = build_sh_complex(f, window(-1, top));
        auto shp = build_shplus_complex(f, window(-1, top));
        for (int d = 0; d < top; ++d) {
            expect_rank(o, "SH(B) n=" + std::to_string(n), sh, d, 0);
            expect_rank(o, "SH+(B) n=" + std::to_string(n), shp, d, d == n + 1 ? 1 : 0);
        }
    }
    return o;
}

Outcome module_oracle()
{
    Outcome o;
    for (int n = 2; n <= 3; ++n) {
        Dga u = corpus::unknot(n);
        auto m = build_module_Mcyc(u, window(0, 8));
        auto ho = build_ho_complex(u, window(0, 8));
        for (int d = 0; d <= 8; ++d) {
            long long a = oracle::homology_rank(m, d), b = oracle::homology_rank(ho, d);
            if (a != b)
                o.fail("n=" + std::to_string(n) + " degree " + std::to_string(d) + ": M^cyc rank " +
                       std::to_string(a) + ", LH^Ho rank " + std::to_string(b));
        }
    }
    return o;
}

Outcome dc_one_vanishing()
{
    Outcome o;
    // The one-chord DGA is EXACT at these lengths: plain ranks, which must agree.
    Dga dc1 = corpus::dc1_vanishing();
    std::vector<long long> first;
    for (int len : {8, 10}) {
        auto c = build_ho_complex(dc1, window(0, 6, len, true));
        std::vector<long long> ranks;
        for (int d = 0; d <= 6; ++d)
            ranks.push_back(oracle::homology_rank(c, d));
        if (first.empty())
            first = ranks;
        else if (ranks != first)
            o.fail("dc1: ranks change between max_len 8 and 10");
        for (int d = 0; d <= 6; ++d)
            if (ranks[static_cast<std::size_t>(d)] != 0)
                o.fail("dc1 max_len " + std::to_string(len) + ": rank " + std::to_string(ranks[static_cast<std::size_t>(d)]) +
                       " at degree " + std::to_string(d));
    }
    // Lambda_T has grading-0 chords, so every max_len truncates. Its differential never lengthens
    // a word, so the length-L complex is a subcomplex of the length-(L+2) one; classes that survive
    // the inclusion are the stable ones.
    Dga lt = corpus::lambda_t(3);
    std::vector<GradedChainComplex> cut;
    for (int len = 1; len <= 4; ++len)
        cut.push_back(build_ho_complex(lt, window(0, 6, len, true)));
    for (int len : {1, 2})
        for (int d = 0; d <= 6; ++d) {
            long long r = oracle::persistent_rank(cut[static_cast<std::size_t>(len - 1)], cut[static_cast<std::size_t>(len + 1)], d);
            if (r != 0)
                o.fail("lambda_T: " + std::to_string(r) + " classes of length <= " + std::to_string(len) +
                       " survive to length " + std::to_string(len + 2) + " in degree " + std::to_string(d));
        }
    return o;
}

Outcome chekanov_distinction()
{
    Outcome o;
    DgaMorphism phi = corpus::chekanov_phi();
    if (!check_morphism(phi).ok)
        o.fail("phi is not a chain map at " + check_morphism(phi).generator);

    const Dga& src = *phi.source;
    uint32_t a6 = src.alphabet.id("a_6");
    if (src.alphabet[a6].grading != -2)
        o.fail("a_6 has grading " + std::to_string(src.alphabet[a6].grading));
    if (!oracle::leibniz_d(src, Element::of(Word::of({a6}))).is_zero())
        o.fail("d(a_6) != 0, so (a_6) is not a cycle");
    auto cyc = build_cyclic_complex(src, window(-3, -1, 3, true));
    int col = cyc.index_of(-2, "(a_6)");
    if (col < 0)
        o.fail("(a_6) missing from the cyclic complex in degree -2");
    else if (!cyc.boundary_at(-2).columns[static_cast<std::size_t>(col)].empty())
        o.fail("d_cyc(a_6) != 0");

    const Dga& dst = *phi.target;
    auto tgt = build_cyclic_complex(dst, window(-3, -1));
    auto image = cyclic_image(phi, {a6});
    SparseMatrix v(static_cast<int>(tgt.dim(-2)), 1);
    for (const auto& [rep, c] : image) {
        int row = tgt.index_of(-2, cyclic_label(dst.alphabet, rep));
        if (row < 0) {
            o.fail("image term " + cyclic_label(dst.alphabet, rep) + " is not a basis element");
            continue;
        }
        v.columns[0].push_back({row, c});
    }
    std::sort(v.columns[0].begin(), v.columns[0].end());
    if (v.columns[0].empty())
        o.fail("phi(a_6) vanishes in the cyclic complex");
    SparseMatrix b = tgt.boundary_at(-1);
    SparseMatrix aug = b;
    aug.cols += 1;
    aug.columns.push_back(v.columns[0]);
    if (oracle::reference_rank(aug) == oracle::reference_rank(b))
        o.fail("phi(a_6) is a boundary in LH^cyc of the target");

    FillingModel ball = builtin_ball_filling(2, 12);
    auto lc = build_lch_surgery(ball, corpus::chekanov_c(), {}, window(-4, 4, 4, true));
    for (const auto& [d, basis] : lc.basis)
        if (d < 0 && !basis.empty())
            o.fail("LCH(B^4, Lambda_c) has " + basis.front() + " in degree " + std::to_string(d));
    return o;
}

void sweep(Outcome& o, const std::string& what, const GradedChainComplex& c)
{
    std::string where;
    if (!oracle::boundary_squares_to_zero(c, &where))
        o.fail(what + ": d^2 != 0 at " + where);
}

void sweep_dga(Outcome& o, const std::string& what, const Dga& dga)
{
    for (uint32_t id = 0; id < dga.alphabet.size(); ++id) {
        Element dd = oracle::leibniz_d(dga, oracle::leibniz_d(dga, dga.differential(id)));
        if (!dd.is_zero())
            o.fail(what + ": d^2 " + dga.alphabet[id].name + " = " + format_element(dga.alphabet, dd));
    }
}

void sweep_all(Outcome& o, const std::string& what, const Dga& dga, const Window& w)
{
    sweep_dga(o, what, dga);
    sweep(o, what + " cyc", build_cyclic_complex(dga, w));
    sweep(o, what + " hoplus", build_hoplus_complex(dga, w));
    sweep(o, what + " ho", build_ho_complex(dga, w));
    sweep(o, what + " M", build_module_M(dga, w));
    sweep(o, what + " mcyc", build_module_Mcyc(dga, w));
    Augmentation zero{std::vector<Q>(dga.alphabet.size())};
    if (is_augmentation(dga, zero))
        sweep(o, what + " lin", linearize(dga, zero));
    if (dga.n >= 2) {
        FillingModel f = builtin_ball_filling(dga.n, w.max_deg + 4);
        sweep(o, what + " lch", build_lch_surgery(f, dga, {}, w));
        sweep(o, what + " slh+", build_shplus_surgery(f, dga, {}, w));
        sweep(o, what + " slh", build_sh_surgery(f, dga, {}, w));
    }
}

Outcome d_squared_sweep()
{
    Outcome o;
    for (int n = 2; n <= 5; ++n)
        sweep_all(o, "unknot n=" + std::to_string(n), corpus::unknot(n), window(0, 10));
    // Chekanov's differential lengthens words, so a length cut is not a subcomplex. A weight
    // with w(c) >= w(every term of dc) is, and it bounds the word length.
    Dga chek = corpus::chekanov_a();
    Window cw = window(-3, 3);
    cw.max_weight = 4;
    for (uint32_t id = 0; id < chek.alphabet.size(); ++id) {
        const std::string& name = chek.alphabet[id].name;
        cw.weights.push_back(name == "a_1" || name == "a_2" ? 3 : name == "a_3" || name == "a_4" ? 2 : 1);
    }
    sweep_all(o, "chekanov_a", chek, cw);
    sweep_all(o, "dc1", corpus::dc1_vanishing(), window(0, 6));
    sweep_all(o, "lambda_T", corpus::lambda_t(3), window(0, 5, 2, true));
    for (int n = 2; n <= 4; ++n) {
        FillingModel f = builtin_ball_filling(n, 16);
        sweep(o, "ball ch", build_ch_complex(f, window(0, 12)));
        sweep(o, "ball sh+", build_shplus_complex(f, window(0, 12)));
        sweep(o, "ball sh", build_sh_complex(f, window(0, 12)));
    }
    for (int n = 3; n <= 4; ++n) {
        auto cat = build_curved_category(minimal_lefschetz_spec(n), 3);
        sweep(o, "hochschild n=" + std::to_string(n), hochschild_complex(cat));
        sweep(o, "lefschetz LH^Ho n=" + std::to_string(n), lefschetz_ho_complex(cat));
        sweep_dga(o, "lefschetz dga n=" + std::to_string(n), lefschetz_dga(cat.spec, dual_h_terms(cat.spec), 3));
    }

    std::mt19937 rng(20240611);
    int lin = 0;
    for (int i = 0; i < 200; ++i) {
        Dga dga = oracle::random_dga(rng, 4, 3, 3);
        Augmentation zero{std::vector<Q>(dga.alphabet.size())};
        lin += is_augmentation(dga, zero);
        sweep_all(o, "random DGA #" + std::to_string(i + 1), dga, window(0, 4));
    }
    if (o.pass)
        o.detail = "200 random DGAs, " + std::to_string(lin) + " with a linearization";
    return o;
}

bool same_dga(const Dga& a, const Dga& b, std::string* why)
{
    if (a.alphabet.size() != b.alphabet.size()) {
        *why = "alphabet sizes differ";
        return false;
    }
    for (uint32_t id = 0; id < a.alphabet.size(); ++id) {
        if (a.alphabet[id].name != b.alphabet[id].name || a.alphabet[id].grading != b.alphabet[id].grading) {
            *why = "generator " + a.alphabet[id].name + " differs";
            return false;
        }
        if (!(a.differential(id) == b.differential(id))) {
            *why = "d " + a.alphabet[id].name + ": " + format_element(a.alphabet, a.differential(id)) + " vs " +
                   format_element(b.alphabet, b.differential(id));
            return false;
        }
    }
    return true;
}

Outcome lefschetz_dictionary()
{
    Outcome o;
    const int N = 3;
    std::vector<std::pair<std::string, AinfSpec>> specs{{"minimal", minimal_lefschetz_spec(3)}};
    std::mt19937 rng(31337);
    int families = 0;
    for (int i = 0; i < 20; ++i) {
        auto r = oracle::random_spec(rng, 3 + i % 2, N);
        families += r.constant_families;
        specs.emplace_back("random #" + std::to_string(i + 1), r.spec);
    }
    for (const auto& [name, spec] : specs) {
        CurvedAinf cat = build_curved_category(spec, N);
        if (!check_curved_ainf(cat).ok()) {
            o.fail(name + ": not a curved A-infinity category");
            continue;
        }
        std::string why;
        if (!same_dga(dualize_tensor_algebra(cat), lefschetz_dga(spec, oracle::dual_h(spec), N), &why))
            o.fail(name + ": dual tensor algebra and series DGA differ, " + why);
        auto hh = hochschild_complex(cat);
        auto ho = lefschetz_ho_complex(cat);
        auto dict = verify_dictionary(cat, hh, ho);
        if (!dict.ok)
            o.fail(name + ": dictionary " + dict.detail);
    }
    if (o.pass)
        o.detail = "minimal example and 20 random specs, " + std::to_string(families) + " constant families";
    return o;
}

Outcome kappa_isomorphism()
{
    Outcome o;
    for (int n = 2; n <= 4; ++n) {
        FillingModel f = builtin_ball_filling(n, 16);
        CobordismMap m = kappa_rescaling(f, window(0, 12));
        if (!m.report.ok)
            o.fail("n=" + std::to_string(n) + ": " + m.report.detail);
        for (int d = 0; d <= 12; ++d) {
            SparseMatrix b = m.map.block_at(m.source, m.target, d);
            if (b.rows != b.cols || oracle::reference_rank(b) != b.rows)
                o.fail("n=" + std::to_string(n) + ": degree " + std::to_string(d) + " block is not invertible");
        }
    }
    return o;
}

}  // namespace

int main()
{
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"unknot LH^cyc and LH^Ho tables, n = 2..5", unknot_tables},
        {"SH(T*S^n) ranks from ball + unknot", [] { return sh_ranks(false); }},
        {"SH+(T*S^n) ranks from ball + unknot", [] { return sh_ranks(true); }},
        {"CH after surgery, n = 2, 3", ch_after_surgery},
        {"ball acyclicity, n = 2..6", ball_acyclicity},
        {"M^cyc and LH^Ho Betti tables agree", module_oracle},
        {"dc = 1 vanishing", dc_one_vanishing},
        {"Chekanov distinction", chekanov_distinction},
        {"d^2 = 0 sweep", d_squared_sweep},
        {"Lefschetz dictionary", lefschetz_dictionary},
        {"kappa rescaling isomorphism", kappa_isomorphism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream line;
        line << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first;
        if (!o.detail.empty())
            line << " (" << o.detail << (o.failures > 1 ? "; " + std::to_string(o.failures - 1) + " more" : "") << ")";
        line.precision(2);
        line << std::fixed << " [" << secs << "s]";
        std::cout << line.str() << std::endl;
        failed += !o.pass;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria pass"
              << std::endl;
    return failed == 0 ? 0 : 1;
}
