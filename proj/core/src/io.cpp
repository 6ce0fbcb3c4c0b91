#include "lsh/io.hpp"

#include "lsh/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>

namespace lsh::io {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

// Input iterator that publishes how many bytes the lexer has consumed.
struct CountingIterator {
    using iterator_category = std::input_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = const char*;
    using reference = const char&;

    const char* p = nullptr;
    const char* base = nullptr;
    std::size_t* consumed = nullptr;

    reference operator*() const { return *p; }
    CountingIterator& operator++()
    {
        ++p;
        *consumed = static_cast<std::size_t>(p - base);
        return *this;
    }
    CountingIterator operator++(int)
    {
        CountingIterator old = *this;
        ++*this;
        return old;
    }
    bool operator==(const CountingIterator& o) const { return p == o.p; }
    bool operator!=(const CountingIterator& o) const { return p != o.p; }
};

// JSON pointer -> line of the value it names.
class LineIndex {
public:
    explicit LineIndex(const std::string& text) : text_(text)
    {
        Sax sax{*this};
        CountingIterator b{text.data(), text.data(), &consumed_};
        CountingIterator e{text.data() + text.size(), text.data(), &consumed_};
        json::sax_parse(b, e, &sax);
    }

    int line(std::string pointer) const
    {
        for (;;) {
            auto it = lines_.find(pointer);
            if (it != lines_.end())
                return it->second;
            if (pointer.empty())
                return 1;
            pointer.erase(pointer.rfind('/'));
        }
    }

private:
    struct Frame {
        bool array;
        std::size_t index;
        std::string key;
    };

    struct Sax : nlohmann::json_sax<json> {
        LineIndex& self;
        std::vector<Frame> stack;
        explicit Sax(LineIndex& s) : self(s) {}

        std::string path() const
        {
            std::string p;
            for (const auto& f : stack)
                p += "/" + (f.array ? std::to_string(f.index) : f.key);
            return p;
        }
        void value()
        {
            self.lines_.emplace(path(), self.current_line());
            if (!stack.empty() && stack.back().array)
                ++stack.back().index;
        }
        bool open(bool array)
        {
            self.lines_.emplace(path(), self.current_line());
            stack.push_back({array, 0, ""});
            return true;
        }
        bool close()
        {
            stack.pop_back();
            if (!stack.empty() && stack.back().array)
                ++stack.back().index;
            return true;
        }
        bool null() override { return value(), true; }
        bool boolean(bool) override { return value(), true; }
        bool number_integer(number_integer_t) override { return value(), true; }
        bool number_unsigned(number_unsigned_t) override { return value(), true; }
        bool number_float(number_float_t, const string_t&) override { return value(), true; }
        bool string(string_t&) override { return value(), true; }
        bool binary(binary_t&) override { return value(), true; }
        bool start_object(std::size_t) override { return open(false); }
        bool key(string_t& k) override
        {
            stack.back().key = k;
            return true;
        }
        bool end_object() override { return close(); }
        bool start_array(std::size_t) override { return open(true); }
        bool end_array() override { return close(); }
        bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override { return false; }
    };

    int current_line() const
    {
        std::size_t end = consumed_ == 0 ? 0 : consumed_ - 1;
        end = std::min(end, text_.size());
        return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + static_cast<long>(end), '\n'));
    }

    const std::string& text_;
    std::size_t consumed_ = 0;
    std::map<std::string, int> lines_;
};

class Diagnostics {
public:
    explicit Diagnostics(const LineIndex& idx) : idx_(idx) {}

    void error(const std::string& pointer, const std::string& msg) { errs_.emplace_back(idx_.line(pointer), msg); }
    bool ok() const { return errs_.empty(); }
    void raise_if_any() const
    {
        if (errs_.empty())
            return;
        std::string msg = errs_[0].second;
        for (std::size_t i = 1; i < errs_.size(); ++i)
            msg += "\nline " + std::to_string(errs_[i].first) + ": " + errs_[i].second;
        throw InputError(msg, errs_[0].first);
    }

private:
    const LineIndex& idx_;
    std::vector<std::pair<int, std::string>> errs_;
};

json parse_json(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::string what = e.what();
        int line = 0;
        auto at = what.find("line ");
        if (at != std::string::npos)
            line = std::atoi(what.c_str() + at + 5);
        throw InputError("malformed document: " + what, line);
    }
}

// Typed access with schema diagnostics; a missing optional field yields nullopt silently.
class Reader {
public:
    Reader(const json& j, std::string ptr, Diagnostics& d) : j_(j), ptr_(std::move(ptr)), d_(d) {}

    const json& node() const { return j_; }
    const std::string& pointer() const { return ptr_; }
    Diagnostics& diag() const { return d_; }

    bool object(std::initializer_list<const char*> allowed) const
    {
        if (!j_.is_object()) {
            d_.error(ptr_, where() + "must be an object");
            return false;
        }
        for (const auto& [k, v] : j_.items()) {
            (void)v;
            if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }))
                d_.error(ptr_ + "/" + k, "unknown field \"" + k + "\"" + (ptr_.empty() ? "" : " in " + ptr_));
        }
        return true;
    }

    const json* field(const char* key, bool required) const
    {
        if (!j_.is_object())
            return nullptr;
        auto it = j_.find(key);
        if (it == j_.end()) {
            if (required)
                d_.error(ptr_, where() + "missing field \"" + key + "\"");
            return nullptr;
        }
        return &*it;
    }

    Reader sub(const char* key) const { return Reader(j_.at(key), ptr_ + "/" + key, d_); }
    Reader at(std::size_t i) const { return Reader(j_.at(i), ptr_ + "/" + std::to_string(i), d_); }

    std::optional<long long> integer(const char* key, bool required = true) const
    {
        const json* f = field(key, required);
        if (!f)
            return std::nullopt;
        if (!f->is_number_integer()) {
            d_.error(ptr_ + "/" + key, "\"" + std::string(key) + "\" must be an integer");
            return std::nullopt;
        }
        return f->get<long long>();
    }

    std::optional<std::string> string(const char* key, bool required = true) const
    {
        const json* f = field(key, required);
        if (!f)
            return std::nullopt;
        if (!f->is_string()) {
            d_.error(ptr_ + "/" + key, "\"" + std::string(key) + "\" must be a string");
            return std::nullopt;
        }
        return f->get<std::string>();
    }

    std::optional<bool> boolean(const char* key, bool required = true) const
    {
        const json* f = field(key, required);
        if (!f)
            return std::nullopt;
        if (!f->is_boolean()) {
            d_.error(ptr_ + "/" + key, "\"" + std::string(key) + "\" must be true or false");
            return std::nullopt;
        }
        return f->get<bool>();
    }

    std::optional<Q> rational(const char* key, bool required = true) const
    {
        const json* f = field(key, required);
        if (!f)
            return std::nullopt;
        if (!f->is_string()) {
            d_.error(ptr_ + "/" + key, "\"" + std::string(key) + "\" must be a rational string such as \"-3/2\"");
            return std::nullopt;
        }
        try {
            return parse_rational(f->get<std::string>());
        } catch (const InputError& e) {
            d_.error(ptr_ + "/" + key, e.what());
            return std::nullopt;
        }
    }

    // Elements of an array field; absent optional arrays are empty.
    std::vector<Reader> array(const char* key, bool required = true) const
    {
        std::vector<Reader> out;
        const json* f = field(key, required);
        if (!f)
            return out;
        if (!f->is_array()) {
            d_.error(ptr_ + "/" + key, "\"" + std::string(key) + "\" must be an array");
            return out;
        }
        for (std::size_t i = 0; i < f->size(); ++i)
            out.emplace_back((*f)[i], ptr_ + "/" + key + "/" + std::to_string(i), d_);
        return out;
    }

    void format(const char* expected) const
    {
        auto f = string("format");
        if (f && *f != expected)
            d_.error(ptr_ + "/format", "format \"" + *f + "\" where \"" + expected + "\" was expected");
    }

private:
    std::string where() const { return ptr_.empty() ? "" : ptr_ + ": "; }

    const json& j_;
    std::string ptr_;
    Diagnostics& d_;
};

std::optional<Word> read_word(const Reader& r, const char* key, const Alphabet& alpha)
{
    const json* w = r.field(key, true);
    if (!w)
        return std::nullopt;
    std::string ptr = r.pointer() + "/" + key;
    if (w->is_string()) {
        std::string s = w->get<std::string>();
        if (s.size() > 2 && s.compare(0, 2, "e_") == 0 &&
            std::all_of(s.begin() + 2, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            int i = std::atoi(s.c_str() + 2);
            if (i >= 1 && i <= alpha.components())
                return Word::idempotent(i - 1);
        }
        r.diag().error(ptr, "word \"" + s + "\" is neither a list of generators nor an idempotent e_i");
        return std::nullopt;
    }
    if (!w->is_array() || w->empty()) {
        r.diag().error(ptr, "word must be a nonempty list of generator names or \"e_i\"");
        return std::nullopt;
    }
    Letters letters;
    bool ok = true;
    for (std::size_t i = 0; i < w->size(); ++i) {
        const json& l = (*w)[i];
        std::string lp = ptr + "/" + std::to_string(i);
        if (!l.is_string()) {
            r.diag().error(lp, "word letters must be generator names");
            ok = false;
            continue;
        }
        auto id = alpha.find(l.get<std::string>());
        if (!id) {
            r.diag().error(lp, "unknown generator \"" + l.get<std::string>() + "\" in word");
            ok = false;
            continue;
        }
        letters.push_back(*id);
    }
    if (!ok)
        return std::nullopt;
    if (!is_composable(alpha, letters)) {
        r.diag().error(ptr, "word " + format_letters(alpha, letters) + " is not composable");
        return std::nullopt;
    }
    return Word::of(std::move(letters));
}

std::optional<Element> read_element(const Reader& r, const Alphabet& alpha)
{
    Element x;
    bool ok = true;
    if (!r.node().is_array()) {
        r.diag().error(r.pointer(), "expected a list of terms {coeff, word}");
        return std::nullopt;
    }
    for (std::size_t i = 0; i < r.node().size(); ++i) {
        Reader t = r.at(i);
        if (!t.object({"coeff", "word"})) {
            ok = false;
            continue;
        }
        auto c = t.rational("coeff");
        auto w = read_word(t, "word", alpha);
        if (!c || !w) {
            ok = false;
            continue;
        }
        x.add(*w, *c);
    }
    if (!ok)
        return std::nullopt;
    return x;
}

ojson word_json(const Alphabet& alpha, const Word& w)
{
    if (w.empty())
        return "e_" + std::to_string(w.unit + 1);
    ojson a = ojson::array();
    for (uint32_t l : w.letters)
        a.push_back(alpha[l].name);
    return a;
}

ojson element_json(const Alphabet& alpha, const Element& x)
{
    ojson a = ojson::array();
    for (const auto& [w, c] : x.terms()) {
        ojson t;
        t["coeff"] = to_string(c);
        t["word"] = word_json(alpha, w);
        a.push_back(std::move(t));
    }
    return a;
}

std::optional<Dga> read_dga(const Reader& r)
{
    Diagnostics& d = r.diag();
    if (!r.object({"format", "field", "components", "ambient_dim", "generators", "differential", "metadata"}))
        return std::nullopt;
    r.format("lsh-dga/1");
    auto field = r.string("field", false);
    if (field && *field != "Q")
        d.error(r.pointer() + "/field", "only the field \"Q\" is supported");
    auto k = r.integer("components");
    auto n = r.integer("ambient_dim");
    if (k && (*k < 1 || *k > 1000)) {
        d.error(r.pointer() + "/components", "components must be in 1..1000");
        k.reset();
    }
    if (!k || !n) {
        r.array("generators");
        return std::nullopt;
    }
    Dga dga(static_cast<int>(*k), static_cast<int>(*n));
    for (const auto& g : r.array("generators")) {
        if (!g.object({"name", "grading", "src", "dst"}))
            continue;
        auto name = g.string("name");
        auto grading = g.integer("grading");
        auto src = g.integer("src");
        auto dst = g.integer("dst");
        if (!name || !grading || !src || !dst)
            continue;
        try {
            dga.add_generator({*name, static_cast<int>(*grading), static_cast<int>(*src - 1), static_cast<int>(*dst - 1)});
        } catch (const InputError& e) {
            d.error(g.pointer(), e.what());
        }
    }
    if (!d.ok())
        return std::nullopt;
    if (const json* diff = r.field("differential", true)) {
        if (!diff->is_object()) {
            d.error(r.pointer() + "/differential", "differential must be an object keyed by generator name");
        } else {
            Reader dr = r.sub("differential");
            for (const auto& [name, terms] : diff->items()) {
                (void)terms;
                auto id = dga.alphabet.find(name);
                std::string ptr = dr.pointer() + "/" + name;
                if (!id) {
                    d.error(ptr, "differential given for unknown generator \"" + name + "\"");
                    continue;
                }
                auto x = read_element(dr.sub(name.c_str()), dga.alphabet);
                if (!x)
                    continue;
                try {
                    dga.set_differential(*id, std::move(*x));
                } catch (const InputError& e) {
                    d.error(ptr, e.what());
                }
            }
        }
    }
    if (const json* meta = r.field("metadata", false)) {
        if (!meta->is_object())
            d.error(r.pointer() + "/metadata", "metadata must be an object");
        else
            dga.metadata = meta->dump();
    }
    if (!d.ok())
        return std::nullopt;
    return dga;
}

ojson dga_json(const Dga& dga)
{
    const Alphabet& alpha = dga.alphabet;
    ojson j;
    j["format"] = "lsh-dga/1";
    j["field"] = "Q";
    j["components"] = dga.components();
    j["ambient_dim"] = dga.n;
    ojson gens = ojson::array();
    for (const auto& g : alpha.generators()) {
        ojson o;
        o["name"] = g.name;
        o["grading"] = g.grading;
        o["src"] = g.src + 1;
        o["dst"] = g.dst + 1;
        gens.push_back(std::move(o));
    }
    j["generators"] = std::move(gens);
    ojson diff = ojson::object();
    for (uint32_t id = 0; id < alpha.size(); ++id)
        if (!dga.d[id].is_zero())
            diff[alpha[id].name] = element_json(alpha, dga.d[id]);
    j["differential"] = std::move(diff);
    j["metadata"] = ojson::parse(json::parse(dga.metadata.empty() ? "{}" : dga.metadata).dump());
    return j;
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

template <class Fn>
auto with_document(const std::string& text, Fn fn)
{
    json j = parse_json(text);
    LineIndex idx(text);
    Diagnostics d(idx);
    Reader r(j, "", d);
    auto out = fn(r);
    d.raise_if_any();
    if (!out)
        throw InputError("document could not be read");
    return std::move(*out);
}

int index_or_error(const Reader& r, const char* key, const std::function<int(const std::string&)>& lookup,
                   const char* what)
{
    auto s = r.string(key);
    if (!s)
        return -1;
    int i = lookup(*s);
    if (i < 0)
        r.diag().error(r.pointer() + "/" + key, std::string("unknown ") + what + " \"" + *s + "\"");
    return i;
}

}  // namespace

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Dga parse_dga(const std::string& text)
{
    return with_document(text, [](const Reader& r) { return read_dga(r); });
}

std::string emit_dga(const Dga& dga) { return dump(dga_json(dga)); }

bool is_partial(const Dga& dga)
{
    json m = json::parse(dga.metadata.empty() ? "{}" : dga.metadata);
    auto it = m.find("partial");
    return it != m.end() && it->is_boolean() && it->get<bool>();
}

FillingModel parse_filling(const std::string& text)
{
    return with_document(text, [](const Reader& r) -> std::optional<FillingModel> {
        Diagnostics& d = r.diag();
        if (!r.object({"format", "n", "orbits", "morse", "ch_counts", "delta_counts", "morse_diff", "theta_counts"}))
            return std::nullopt;
        r.format("lsh-filling/1");
        FillingModel f;
        if (auto n = r.integer("n"))
            f.n = static_cast<int>(*n);
        for (const auto& o : r.array("orbits")) {
            if (!o.object({"label", "grading", "kappa", "good"}))
                continue;
            auto label = o.string("label");
            auto grading = o.integer("grading");
            auto kappa = o.integer("kappa", false);
            auto good = o.boolean("good", false);
            if (label && grading)
                f.orbits.push_back({*label, static_cast<int>(*grading), static_cast<int>(kappa.value_or(1)),
                                    good.value_or(true)});
        }
        for (const auto& m : r.array("morse", false)) {
            if (!m.object({"label", "grading"}))
                continue;
            auto label = m.string("label");
            auto grading = m.integer("grading");
            if (label && grading)
                f.morse.push_back({*label, static_cast<int>(*grading)});
        }
        auto orbit = [&](const std::string& s) { return f.orbit_index(s); };
        auto morse = [&](const std::string& s) { return f.morse_index(s); };
        auto table = [&](const char* key, std::map<CountKey, Q>& out, const std::function<int(const std::string&)>& from,
                         const char* from_key, const char* from_what,
                         const std::function<int(const std::string&)>& to, const char* to_key, const char* to_what) {
            for (const auto& e : r.array(key, false)) {
                if (!e.object({from_key, to_key, "coeff"}))
                    continue;
                int a = index_or_error(e, from_key, from, from_what);
                int b = index_or_error(e, to_key, to, to_what);
                auto c = e.rational("coeff");
                if (a >= 0 && b >= 0 && c)
                    out[{a, b}] += *c;
            }
        };
        table("ch_counts", f.ch_counts, orbit, "from", "orbit", orbit, "to", "orbit");
        table("delta_counts", f.delta_counts, orbit, "from", "orbit", orbit, "to", "orbit");
        table("morse_diff", f.morse_diff, morse, "from", "Morse generator", morse, "to", "Morse generator");
        table("theta_counts", f.theta_counts, orbit, "orbit", "orbit", morse, "morse", "Morse generator");
        if (!d.ok())
            return std::nullopt;
        try {
            validate_filling(f);
        } catch (const InputError& e) {
            d.error("", e.what());
            return std::nullopt;
        }
        return f;
    });
}

std::string emit_filling(const FillingModel& f)
{
    ojson j;
    j["format"] = "lsh-filling/1";
    j["n"] = f.n;
    ojson orbits = ojson::array();
    for (const auto& o : f.orbits) {
        ojson e;
        e["label"] = o.label;
        e["grading"] = o.grading;
        e["kappa"] = o.kappa;
        e["good"] = o.good;
        orbits.push_back(std::move(e));
    }
    j["orbits"] = std::move(orbits);
    ojson morse = ojson::array();
    for (const auto& p : f.morse) {
        ojson e;
        e["label"] = p.label;
        e["grading"] = p.grading;
        morse.push_back(std::move(e));
    }
    j["morse"] = std::move(morse);
    auto table = [](const std::map<CountKey, Q>& t, const char* fk, const char* tk, auto from_label, auto to_label) {
        ojson a = ojson::array();
        for (const auto& [key, c] : t) {
            ojson e;
            e[fk] = from_label(key.first);
            e[tk] = to_label(key.second);
            e["coeff"] = to_string(c);
            a.push_back(std::move(e));
        }
        return a;
    };
    auto ol = [&](int i) { return f.orbits[static_cast<std::size_t>(i)].label; };
    auto ml = [&](int i) { return f.morse[static_cast<std::size_t>(i)].label; };
    j["ch_counts"] = table(f.ch_counts, "from", "to", ol, ol);
    j["delta_counts"] = table(f.delta_counts, "from", "to", ol, ol);
    j["morse_diff"] = table(f.morse_diff, "from", "to", ml, ml);
    j["theta_counts"] = table(f.theta_counts, "orbit", "morse", ol, ml);
    return dump(j);
}

SurgeryCounts parse_counts(const std::string& text, const FillingModel& f, const Dga& dga)
{
    return with_document(text, [&](const Reader& r) -> std::optional<SurgeryCounts> {
        Diagnostics& d = r.diag();
        if (!r.object({"format", "mixed", "check", "hat", "tau", "morse_tau"}))
            return std::nullopt;
        r.format("lsh-counts/1");
        SurgeryCounts c;
        auto orbit = [&](const std::string& s) { return f.orbit_index(s); };
        auto morse = [&](const std::string& s) { return f.morse_index(s); };
        auto words = [&](const char* key, std::vector<WordCount>& out) {
            for (const auto& e : r.array(key, false)) {
                if (!e.object({"orbit", "word", "coeff"}))
                    continue;
                int o = index_or_error(e, "orbit", orbit, "orbit");
                auto w = read_word(e, "word", dga.alphabet);
                auto q = e.rational("coeff");
                if (o >= 0 && w && q) {
                    if (w->empty())
                        d.error(e.pointer() + "/word", "count words must be nonempty");
                    else
                        out.push_back({o, w->letters, *q});
                }
            }
        };
        words("mixed", c.mixed);
        words("check", c.check);
        words("hat", c.hat);
        auto comps = [&](const char* key, const char* who, std::map<CountKey, Q>& out,
                         const std::function<int(const std::string&)>& lookup, const char* what) {
            for (const auto& e : r.array(key, false)) {
                if (!e.object({who, "component", "coeff"}))
                    continue;
                int a = index_or_error(e, who, lookup, what);
                auto comp = e.integer("component");
                auto q = e.rational("coeff");
                if (comp && (*comp < 1 || *comp > dga.components()))
                    d.error(e.pointer() + "/component", "component out of range");
                else if (a >= 0 && comp && q)
                    out[{a, static_cast<int>(*comp - 1)}] += *q;
            }
        };
        comps("tau", "orbit", c.tau, orbit, "orbit");
        comps("morse_tau", "morse", c.morse_tau, morse, "Morse generator");
        if (!d.ok())
            return std::nullopt;
        try {
            validate_counts(f, dga, c);
        } catch (const InputError& e) {
            d.error("", e.what());
            return std::nullopt;
        }
        return c;
    });
}

std::string emit_counts(const SurgeryCounts& c, const FillingModel& f, const Dga& dga)
{
    ojson j;
    j["format"] = "lsh-counts/1";
    auto words = [&](const std::vector<WordCount>& v) {
        ojson a = ojson::array();
        for (const auto& w : v) {
            ojson e;
            e["orbit"] = f.orbits.at(static_cast<std::size_t>(w.orbit)).label;
            e["word"] = word_json(dga.alphabet, Word::of(w.word));
            e["coeff"] = to_string(w.coeff);
            a.push_back(std::move(e));
        }
        return a;
    };
    j["mixed"] = words(c.mixed);
    j["check"] = words(c.check);
    j["hat"] = words(c.hat);
    auto comps = [&](const std::map<CountKey, Q>& t, const char* who, auto label) {
        ojson a = ojson::array();
        for (const auto& [k, q] : t) {
            ojson e;
            e[who] = label(k.first);
            e["component"] = k.second + 1;
            e["coeff"] = to_string(q);
            a.push_back(std::move(e));
        }
        return a;
    };
    j["tau"] = comps(c.tau, "orbit", [&](int i) { return f.orbits.at(static_cast<std::size_t>(i)).label; });
    j["morse_tau"] = comps(c.morse_tau, "morse", [&](int i) { return f.morse.at(static_cast<std::size_t>(i)).label; });
    return dump(j);
}

namespace {

std::optional<Morphism> read_morphism_name(const Reader& r, const std::string& ptr, const json& v, const AinfSpec& spec,
                                           const std::map<std::string, int>& points)
{
    if (!v.is_string()) {
        r.diag().error(ptr, "morphisms are named \"e_i\", \"m_i\", \"<point>\" or \"<point>*\"");
        return std::nullopt;
    }
    std::string s = v.get<std::string>();
    auto object = [&](char tag, MorKind kind) -> std::optional<Morphism> {
        if (s.size() > 2 && s[0] == tag && s[1] == '_' &&
            std::all_of(s.begin() + 2, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            int i = std::atoi(s.c_str() + 2);
            if (i >= 1 && i <= spec.k)
                return Morphism{kind, i - 1, 0};
        }
        return std::nullopt;
    };
    if (auto m = object('e', MorKind::Unit))
        return m;
    if (auto m = object('m', MorKind::Max))
        return m;
    bool back = !s.empty() && s.back() == '*';
    auto it = points.find(back ? s.substr(0, s.size() - 1) : s);
    if (it != points.end())
        return Morphism{back ? MorKind::Bwd : MorKind::Fwd, it->second, 0};
    r.diag().error(ptr, "unknown morphism \"" + s + "\"");
    return std::nullopt;
}

std::string morphism_name(const AinfSpec& spec, const Morphism& x) { return morphism_label(spec, Morphism{x.kind, x.index, 0}); }

}  // namespace

AinfSpec parse_ainf(const std::string& text, int n_override)
{
    return with_document(text, [&](const Reader& r) -> std::optional<AinfSpec> {
        Diagnostics& d = r.diag();
        if (!r.object({"format", "spheres", "n", "points", "order", "constants"}))
            return std::nullopt;
        r.format("lsh-ainf/1");
        AinfSpec s;
        auto k = r.integer("spheres");
        auto n = r.integer("n", n_override <= 0);
        if (k)
            s.k = static_cast<int>(*k);
        if (n && n_override > 0 && *n != n_override)
            d.error("/n", "document has n = " + std::to_string(*n) + " but " + std::to_string(n_override) +
                              " was requested");
        s.n = n ? static_cast<int>(*n) : n_override;
        std::map<std::string, int> points;
        for (const auto& p : r.array("points")) {
            if (!p.object({"name", "spheres", "grading"}))
                continue;
            auto name = p.string("name");
            auto grading = p.integer("grading");
            const json* sp = p.field("spheres", true);
            if (sp && !(sp->is_array() && sp->size() == 2 && (*sp)[0].is_number_integer() && (*sp)[1].is_number_integer())) {
                d.error(p.pointer() + "/spheres", "spheres must be a pair [i, j] with i < j");
                continue;
            }
            if (!name || !grading || !sp)
                continue;
            points[*name] = static_cast<int>(s.points.size());
            s.points.push_back({*name, (*sp)[0].get<int>() - 1, (*sp)[1].get<int>() - 1, static_cast<int>(*grading)});
        }
        if (const json* order = r.field("order", false)) {
            if (!order->is_array() || !std::all_of(order->begin(), order->end(), [](const json& v) { return v.is_string(); }))
                d.error("/order", "order must be a list of intersection point names");
            else
                for (const auto& v : *order)
                    s.order.push_back(v.get<std::string>());
        }
        for (const auto& c : r.array("constants", false)) {
            if (!c.object({"inputs", "output", "coeff"}))
                continue;
            AinfConstant ac;
            bool ok = true;
            const json* in = c.field("inputs", true);
            if (in && in->is_array()) {
                for (std::size_t i = 0; i < in->size(); ++i) {
                    auto m = read_morphism_name(c, c.pointer() + "/inputs/" + std::to_string(i), (*in)[i], s, points);
                    ok = ok && m.has_value();
                    if (m)
                        ac.inputs.push_back(*m);
                }
            } else {
                d.error(c.pointer() + "/inputs", "inputs must be a list of morphism names");
                ok = false;
            }
            const json* out = c.field("output", true);
            std::optional<Morphism> om;
            if (out)
                om = read_morphism_name(c, c.pointer() + "/output", *out, s, points);
            auto q = c.rational("coeff");
            if (ok && om && q) {
                ac.output = *om;
                ac.coeff = *q;
                s.constants.push_back(std::move(ac));
            }
        }
        if (!d.ok())
            return std::nullopt;
        try {
            validate_spec(s);
        } catch (const InputError& e) {
            d.error("", e.what());
            return std::nullopt;
        }
        return s;
    });
}

std::string emit_ainf(const AinfSpec& spec)
{
    ojson j;
    j["format"] = "lsh-ainf/1";
    j["spheres"] = spec.k;
    j["n"] = spec.n;
    ojson pts = ojson::array();
    for (const auto& p : spec.points) {
        ojson e;
        e["name"] = p.name;
        e["spheres"] = ojson::array({p.lo + 1, p.hi + 1});
        e["grading"] = p.grading;
        pts.push_back(std::move(e));
    }
    j["points"] = std::move(pts);
    j["order"] = spec.order;
    ojson cs = ojson::array();
    for (const auto& c : spec.constants) {
        ojson e;
        ojson in = ojson::array();
        for (const auto& x : c.inputs)
            in.push_back(morphism_name(spec, x));
        e["inputs"] = std::move(in);
        e["output"] = morphism_name(spec, c.output);
        e["coeff"] = to_string(c.coeff);
        cs.push_back(std::move(e));
    }
    j["constants"] = std::move(cs);
    return dump(j);
}

MorphismDocument parse_morphism(const std::string& text)
{
    return with_document(text, [](const Reader& r) -> std::optional<MorphismDocument> {
        Diagnostics& d = r.diag();
        if (!r.object({"format", "source", "target", "images"}))
            return std::nullopt;
        r.format("lsh-morphism/1");
        std::optional<Dga> src, dst;
        if (r.field("source", true))
            src = read_dga(r.sub("source"));
        if (r.field("target", true))
            dst = read_dga(r.sub("target"));
        if (!src || !dst)
            return std::nullopt;
        MorphismDocument m;
        m.source = std::make_shared<const Dga>(std::move(*src));
        m.target = std::make_shared<const Dga>(std::move(*dst));
        m.map = DgaMorphism{m.source, m.target, std::vector<Element>(m.source->alphabet.size())};
        const json* images = r.field("images", true);
        if (images && !images->is_object()) {
            d.error("/images", "images must be an object keyed by source generator");
        } else if (images) {
            Reader ir = r.sub("images");
            for (const auto& [name, v] : images->items()) {
                (void)v;
                auto id = m.source->alphabet.find(name);
                if (!id) {
                    d.error("/images/" + name, "image given for unknown source generator \"" + name + "\"");
                    continue;
                }
                if (auto x = read_element(ir.sub(name.c_str()), m.target->alphabet))
                    m.map.image[*id] = std::move(*x);
            }
        }
        if (!d.ok())
            return std::nullopt;
        return m;
    });
}

std::string emit_morphism(const MorphismDocument& m)
{
    ojson j;
    j["format"] = "lsh-morphism/1";
    j["source"] = dga_json(*m.source);
    j["target"] = dga_json(*m.target);
    ojson images = ojson::object();
    for (uint32_t id = 0; id < m.source->alphabet.size(); ++id)
        if (!m.map.image[id].is_zero())
            images[m.source->alphabet[id].name] = element_json(m.target->alphabet, m.map.image[id]);
    j["images"] = std::move(images);
    return dump(j);
}

Augmentation parse_augmentation(const std::string& text, const Dga& dga)
{
    return with_document(text, [&](const Reader& r) -> std::optional<Augmentation> {
        Diagnostics& d = r.diag();
        if (!r.object({"format", "values"}))
            return std::nullopt;
        r.format("lsh-augmentation/1");
        Augmentation eps{std::vector<Q>(dga.alphabet.size())};
        const json* values = r.field("values", true);
        if (values && !values->is_object()) {
            d.error("/values", "values must be an object keyed by generator");
        } else if (values) {
            Reader vr = r.sub("values");
            for (const auto& [name, v] : values->items()) {
                (void)v;
                auto id = dga.alphabet.find(name);
                if (!id) {
                    d.error("/values/" + name, "unknown generator \"" + name + "\"");
                    continue;
                }
                auto q = vr.rational(name.c_str());
                if (!q)
                    continue;
                if (*q != 0 && dga.alphabet[*id].grading != 0)
                    d.error("/values/" + name, "augmentation value on \"" + name + "\" of nonzero grading");
                eps.value[*id] = *q;
            }
        }
        if (!d.ok())
            return std::nullopt;
        return eps;
    });
}

std::string emit_augmentation(const Augmentation& eps, const Dga& dga)
{
    ojson j;
    j["format"] = "lsh-augmentation/1";
    ojson values = ojson::object();
    for (uint32_t id = 0; id < dga.alphabet.size(); ++id)
        if (eps.value.at(id) != 0)
            values[dga.alphabet[id].name] = to_string(eps.value[id]);
    j["values"] = std::move(values);
    return dump(j);
}

namespace {

constexpr std::size_t kBasisShown = 6;

std::vector<std::string> basis_summary(const GradedChainComplex& c, int d)
{
    const auto& b = c.basis_at(d);
    std::vector<std::string> out(b.begin(), b.begin() + static_cast<long>(std::min(b.size(), kBasisShown)));
    if (b.size() > kBasisShown)
        out.push_back("... +" + std::to_string(b.size() - kBasisShown) + " more");
    return out;
}

std::string banner(const GradedChainComplex& c)
{
    if (c.guard == Guard::Exact)
        return "";
    return "TRUNCATED: words cut at length " + std::to_string(c.max_len) +
           "; ranks are those of the truncated complex (" + std::to_string(c.dropped_terms) +
           " differential terms left the basis)";
}

}  // namespace

std::string betti_text(const std::string& title, const GradedChainComplex& c, const BettiTable& t)
{
    std::ostringstream os;
    std::string b = banner(c);
    if (!b.empty())
        os << b << "\n";
    os << title << "  window [" << c.window_min << ", " << c.window_max << "]  guard " << guard_name(t.guard)
       << "  max_len " << c.max_len << "\n";
    os << std::setw(6) << "degree" << "  " << std::setw(4) << "rank" << "  " << std::setw(5) << "dim" << "  "
       << std::setw(4) << "edge" << "  basis\n";
    for (const auto& [d, r] : t.rank) {
        std::string basis;
        for (const auto& l : basis_summary(c, d))
            basis += (basis.empty() ? "" : ", ") + l;
        os << std::setw(6) << d << "  " << std::setw(4) << r << "  " << std::setw(5) << t.dims.at(d) << "  "
           << std::setw(4) << (t.edge.count(d) ? "yes" : "") << "  " << basis << "\n";
    }
    return os.str();
}

std::string betti_json(const std::string& title, const GradedChainComplex& c, const BettiTable& t)
{
    ojson j;
    j["format"] = "lsh-betti/1";
    j["complex"] = title;
    j["window"] = ojson::array({c.window_min, c.window_max});
    j["guard"] = guard_name(t.guard);
    j["max_len"] = c.max_len;
    j["complete"] = t.complete;
    j["dropped_terms"] = t.dropped_terms;
    std::string b = banner(c);
    if (!b.empty())
        j["banner"] = b;
    ojson rows = ojson::array();
    for (const auto& [d, r] : t.rank) {
        ojson row;
        row["degree"] = d;
        row["rank"] = r;
        row["dim"] = t.dims.at(d);
        row["edge"] = t.edge.count(d) > 0;
        row["basis"] = basis_summary(c, d);
        rows.push_back(std::move(row));
    }
    j["degrees"] = std::move(rows);
    return dump(j);
}

BettiTable parse_betti_json(const std::string& text)
{
    return with_document(text, [](const Reader& r) -> std::optional<BettiTable> {
        Diagnostics& d = r.diag();
        if (!r.object({"format", "complex", "window", "guard", "max_len", "complete", "dropped_terms", "banner", "degrees"}))
            return std::nullopt;
        r.format("lsh-betti/1");
        BettiTable t;
        auto guard = r.string("guard");
        if (guard && *guard != "EXACT" && *guard != "TRUNCATED")
            d.error("/guard", "guard must be EXACT or TRUNCATED");
        t.guard = guard && *guard == "TRUNCATED" ? Guard::Truncated : Guard::Exact;
        t.complete = r.boolean("complete").value_or(false);
        t.dropped_terms = static_cast<std::size_t>(r.integer("dropped_terms").value_or(0));
        for (const auto& row : r.array("degrees")) {
            if (!row.object({"degree", "rank", "dim", "edge", "basis"}))
                continue;
            auto deg = row.integer("degree");
            auto rank = row.integer("rank");
            auto dim = row.integer("dim");
            auto edge = row.boolean("edge");
            if (!deg || !rank || !dim || !edge)
                continue;
            int dd = static_cast<int>(*deg);
            t.rank[dd] = *rank;
            t.dims[dd] = *dim;
            if (*edge)
                t.edge.insert(dd);
        }
        if (!d.ok())
            return std::nullopt;
        return t;
    });
}

}  // namespace lsh::io
