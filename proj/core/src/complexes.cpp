#include "lsh/complexes.hpp"

#include "lsh/error.hpp"

#include <sstream>

namespace lsh {

CyclicWord cyclic_class(const Alphabet& alpha, const Letters& w)
{
    if (w.empty())
        throw InputError("cyclic class of an empty word");
    if (!is_cyclically_composable(alpha, w))
        throw InputError("word " + format_letters(alpha, w) + " is not cyclically composable");
    CyclicWord out;
    out.rep = w;
    std::size_t period = w.size();
    for (std::size_t s = 1; s < w.size(); ++s) {
        Letters r = rotated(w, s);
        if (r == w) {
            period = s;
            break;
        }
    }
    for (std::size_t s = 1; s < period; ++s) {
        Letters r = rotated(w, s);
        if (r < out.rep) {
            out.rep = std::move(r);
            out.sign = rotation_sign(alpha, w, s);
        }
    }
    out.kappa = static_cast<int>(w.size() / period);
    out.is_zero = period < w.size() && rotation_sign(alpha, w, period) == -1;
    return out;
}

long long DecoratedWord::grading(const Alphabet& alpha) const
{
    return lsh::grading(alpha, word) + (hat ? 1 : 0);
}

std::pair<Letters, int> mark_to_front(const Alphabet& alpha, const DecoratedWord& w)
{
    if (w.mark >= w.word.size())
        throw InputError("mark outside the word");
    if (w.mark == 0)
        return {w.word, 1};
    long long head = 0, tail = w.hat ? 1 : 0;
    for (std::size_t i = 0; i < w.word.size(); ++i)
        (i < w.mark ? head : tail) += alpha[w.word[i]].grading;
    return {rotated(w.word, w.mark), sign_of_parity(head * tail)};
}

std::vector<std::pair<DecoratedWord, int>> s_operator(const Alphabet& alpha, const Word& w)
{
    std::vector<std::pair<DecoratedWord, int>> out;
    long long prefix = 0;
    for (std::size_t j = 0; j < w.letters.size(); ++j) {
        out.push_back({DecoratedWord{w.letters, j, true}, sign_of_parity(prefix)});
        prefix += alpha[w.letters[j]].grading;
    }
    return out;
}

std::string cyclic_label(const Alphabet& alpha, const Letters& rep) { return "(" + format_letters(alpha, rep) + ")"; }
std::string check_label(const Alphabet& alpha, const Letters& w) { return "chk(" + format_letters(alpha, w) + ")"; }
std::string hat_label(const Alphabet& alpha, const Letters& w) { return "hat(" + format_letters(alpha, w) + ")"; }
std::string tau_label(int component) { return "tau_" + std::to_string(component + 1); }

namespace {

Letters concat_letters(const Letters& a, const Letters& b)
{
    Letters r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

Letters slice(const Letters& w, std::size_t from, std::size_t to)
{
    return Letters(w.begin() + static_cast<std::ptrdiff_t>(from), w.begin() + static_cast<std::ptrdiff_t>(to));
}

// Label-keyed assembly that counts terms landing outside the enumerated bases.
struct Assembly {
    ComplexBuilder b;
    std::size_t dropped = 0;

    void entry(int degree, const std::string& src, const std::string& dst, const Q& c)
    {
        if (c != 0 && !b.add_entry(degree, src, dst, c))
            ++dropped;
    }

    GradedChainComplex finish(const std::string& name, const Window& window, const GuardVerdict& v) const
    {
        GradedChainComplex c = b.finish(name, window.min_deg, window.max_deg);
        c.max_len = v.max_len;
        c.guard = v.guard;
        c.dropped_terms = dropped;
        return c;
    }
};

GuardVerdict guard_or_throw(const Alphabet& alpha, const Window& window, int shift)
{
    GuardVerdict v = finiteness_guard(alpha, window, shift);
    if (v.guard == Guard::Truncated && !window.allow_truncation)
        throw InputError("finiteness guard failed (" + v.reason + "); truncation was not accepted");
    return v;
}

const std::vector<int>* weights_of(const Window& window)
{
    return window.max_weight >= 0 ? &window.weights : nullptr;
}

bool in_range(long long g, int lo, int hi) { return g >= lo && g <= hi; }

// Terms of d(chk(w)) in the check space; collapses to a unit are reported separately.
template <class OnCheck, class OnUnit>
void check_differential(const Dga& dga, const Letters& w, OnCheck on_check, OnUnit on_unit)
{
    for (const auto& [v, coeff] : d_word(dga, Word::of(w)).terms()) {
        if (v.empty())
            on_unit(v.unit, coeff);
        else
            on_check(v.letters, coeff);
    }
}

// d(hat(c w')) = -S(dc) w' - (-1)^{|c|} hat(c d(w')) + chk(w) - sign(P) chk(P w).
template <class OnCheck, class OnHat>
void hat_differential(const Dga& dga, const Letters& w, OnCheck on_check, OnHat on_hat)
{
    const Alphabet& alpha = dga.alphabet;
    Letters tail = slice(w, 1, w.size());
    for (const auto& [b, coeff] : dga.d[w[0]].terms()) {
        if (b.empty())
            continue;
        Letters full = concat_letters(b.letters, tail);
        for (const auto& [dec, s] : s_operator(alpha, b)) {
            auto [front, rs] = mark_to_front(alpha, DecoratedWord{full, dec.mark, true});
            on_hat(front, -coeff * (s * rs));
        }
    }
    int sc = sign_of_parity(alpha[w[0]].grading);
    if (!tail.empty()) {
        for (const auto& [v, coeff] : d_word(dga, Word::of(tail)).terms())
            on_hat(concat_letters({w[0]}, v.letters), -coeff * sc);
    }
    if (w.size() > 1) {
        on_check(w, Q(1));
        auto [pw, ps] = koszul_rotate(alpha, w);
        on_check(pw, Q(-ps));
    }
}

GradedChainComplex build_ho(const Dga& dga, const Window& window, bool with_tau,
                            const std::map<uint32_t, Q>& overrides, const std::string& name)
{
    const Alphabet& alpha = dga.alphabet;
    GuardVerdict v = guard_or_throw(alpha, window, 1);
    int lo = window.min_deg - 1, hi = window.max_deg + 1;
    auto words = enumerate_words(alpha, true, v.max_len, lo - 1, hi, weights_of(window), window.max_weight);

    Assembly a;
    if (with_tau && in_range(0, lo, hi))
        for (int i = 0; i < dga.components(); ++i)
            a.b.add(0, tau_label(i));
    for (const auto& w : words) {
        long long g = grading(alpha, w);
        if (in_range(g, lo, hi))
            a.b.add(static_cast<int>(g), check_label(alpha, w));
        if (in_range(g + 1, lo, hi))
            a.b.add(static_cast<int>(g + 1), hat_label(alpha, w));
    }
    for (const auto& w : words) {
        long long g = grading(alpha, w);
        if (in_range(g, lo + 1, hi)) {
            int deg = static_cast<int>(g);
            std::string src = check_label(alpha, w);
            check_differential(
                dga, w, [&](const Letters& t, const Q& c) { a.entry(deg, src, check_label(alpha, t), c); },
                [&](int i, const Q& c) {
                    if (!with_tau)
                        return;
                    auto it = w.size() == 1 ? overrides.find(w[0]) : overrides.end();
                    a.entry(deg, src, tau_label(i), it == overrides.end() ? c : it->second);
                });
            if (with_tau && w.size() == 1 && deg == 1 && overrides.count(w[0]) &&
                dga.d[w[0]].coefficient(Word::idempotent(alpha[w[0]].src)) == 0)
                a.entry(deg, src, tau_label(alpha[w[0]].src), overrides.at(w[0]));
        }
        if (in_range(g + 1, lo + 1, hi)) {
            int deg = static_cast<int>(g + 1);
            std::string src = hat_label(alpha, w);
            hat_differential(
                dga, w, [&](const Letters& t, const Q& c) { a.entry(deg, src, check_label(alpha, t), c); },
                [&](const Letters& t, const Q& c) { a.entry(deg, src, hat_label(alpha, t), c); });
        }
    }
    return a.finish(name, window, v);
}

// Module letters: x_i or hat(c), kept apart from the chord alphabet.
struct ModuleLetter {
    bool is_x = true;
    uint32_t id = 0;  // component for x, chord id for hat

    long long grading(const Alphabet& alpha) const { return is_x ? 0 : alpha[id].grading + 1; }
    int src(const Alphabet& alpha) const { return is_x ? static_cast<int>(id) : alpha[id].src; }
    int dst(const Alphabet& alpha) const { return is_x ? static_cast<int>(id) : alpha[id].dst; }
    std::string name(const Alphabet& alpha) const { return is_x ? "x_" + std::to_string(id + 1) : "^" + alpha[id].name; }
};

std::string module_label(const Alphabet& alpha, const Letters& w1, const ModuleLetter& u, const Letters& w2)
{
    std::string s;
    if (!w1.empty())
        s += format_letters(alpha, w1) + " ";
    s += "[" + u.name(alpha) + "]";
    if (!w2.empty())
        s += " " + format_letters(alpha, w2);
    return s;
}

// A term w1 u w2 of the module with coefficient.
struct ModuleTerm {
    Letters w1;
    ModuleLetter u;
    Letters w2;
    Q coeff;
};

// d(w1 u w2) with d(x) = 0 and d(hat c) = x c - c x - S(dc).
std::vector<ModuleTerm> module_differential(const Dga& dga, const Letters& w1, const ModuleLetter& u, const Letters& w2)
{
    const Alphabet& alpha = dga.alphabet;
    std::vector<ModuleTerm> out;
    long long g1 = grading(alpha, w1);
    if (!w1.empty())
        for (const auto& [v, c] : d_word(dga, Word::of(w1)).terms())
            out.push_back({v.letters, u, w2, c});
    int s1 = sign_of_parity(g1);
    if (!u.is_x) {
        const Generator& c = alpha[u.id];
        out.push_back({w1, ModuleLetter{true, static_cast<uint32_t>(c.dst)}, concat_letters({u.id}, w2), Q(s1)});
        out.push_back({concat_letters(w1, {u.id}), ModuleLetter{true, static_cast<uint32_t>(c.src)}, w2, Q(-s1)});
        for (const auto& [b, coeff] : dga.d[u.id].terms()) {
            long long prefix = 0;
            for (std::size_t j = 0; j < b.letters.size(); ++j) {
                out.push_back({concat_letters(w1, slice(b.letters, 0, j)), ModuleLetter{false, b.letters[j]},
                               concat_letters(slice(b.letters, j + 1, b.letters.size()), w2),
                               -coeff * (s1 * sign_of_parity(prefix))});
                prefix += alpha[b.letters[j]].grading;
            }
        }
    }
    if (!w2.empty()) {
        int s2 = sign_of_parity(g1 + u.grading(alpha));
        for (const auto& [v, c] : d_word(dga, Word::of(w2)).terms())
            out.push_back({w1, u, v.letters, c * s2});
    }
    return out;
}

// Cyclic reduction (w1, u, w2) -> u w2 w1 with sign (-1)^{|w1|(|u|+|w2|)}.
std::pair<Letters, int> cyclic_reduce(const Alphabet& alpha, const ModuleTerm& t)
{
    long long g1 = grading(alpha, t.w1);
    long long g2 = t.u.grading(alpha) + grading(alpha, t.w2);
    return {concat_letters(t.w2, t.w1), sign_of_parity(g1 * g2)};
}

std::string mcyc_label(const Alphabet& alpha, const ModuleLetter& u, const Letters& w)
{
    return module_label(alpha, {}, u, w);
}

std::vector<Letters> parse_letters(const Alphabet& alpha, const std::string& text)
{
    std::vector<Letters> out(1);
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        auto caret = tok.find('^');
        std::string name = caret == std::string::npos ? tok : tok.substr(0, caret);
        int power = caret == std::string::npos ? 1 : std::stoi(tok.substr(caret + 1));
        uint32_t id = alpha.id(name);
        for (int i = 0; i < power; ++i)
            out[0].push_back(id);
    }
    return out;
}

}  // namespace

GradedChainComplex build_cyclic_complex(const Dga& dga, const Window& window)
{
    const Alphabet& alpha = dga.alphabet;
    GuardVerdict v = guard_or_throw(alpha, window, 0);
    int lo = window.min_deg - 1, hi = window.max_deg + 1;
    auto words = enumerate_words(alpha, true, v.max_len, lo, hi, weights_of(window), window.max_weight);

    Assembly a;
    std::vector<Letters> reps;
    for (const auto& w : words) {
        CyclicWord cw = cyclic_class(alpha, w);
        if (cw.is_zero || cw.rep != w)
            continue;
        reps.push_back(w);
        a.b.add(static_cast<int>(grading(alpha, w)), cyclic_label(alpha, w));
    }
    for (const auto& w : reps) {
        int deg = static_cast<int>(grading(alpha, w));
        if (deg <= lo)
            continue;
        std::string src = cyclic_label(alpha, w);
        for (const auto& [t, c] : d_word(dga, Word::of(w)).terms()) {
            if (t.empty())
                continue;
            CyclicWord ct = cyclic_class(alpha, t.letters);
            if (!ct.is_zero)
                a.entry(deg, src, cyclic_label(alpha, ct.rep), c * ct.sign);
        }
    }
    return a.finish("LH^cyc", window, v);
}

GradedChainComplex build_hoplus_complex(const Dga& dga, const Window& window)
{
    return build_ho(dga, window, false, {}, "LH^Ho+");
}

GradedChainComplex build_ho_complex(const HoComplexSpec& spec, const Window& window)
{
    if (!spec.dga)
        throw InputError("Ho complex needs a DGA");
    for (const auto& [id, c] : spec.unit_overrides) {
        (void)c;
        if (id >= spec.dga->alphabet.size())
            throw InputError("unit override for an unknown generator");
        const Generator& g = spec.dga->alphabet[id];
        if (g.src != g.dst || g.grading != 1)
            throw InputError("unit override on " + g.name + ", which is not a grading-1 self-chord");
    }
    return build_ho(*spec.dga, window, true, spec.unit_overrides, "LH^Ho");
}

GradedChainComplex build_module_M(const Dga& dga, const Window& window)
{
    const Alphabet& alpha = dga.alphabet;
    GuardVerdict v = guard_or_throw(alpha, window, 1);
    int lo = window.min_deg - 1, hi = window.max_deg + 1;
    auto words = enumerate_words(alpha, false, v.max_len, lo - 1, hi, weights_of(window), window.max_weight);
    words.insert(words.begin(), Letters{});

    struct Basis {
        Letters w1;
        ModuleLetter u;
        Letters w2;
        int deg;
    };
    std::vector<Basis> basis;
    Assembly a;
    auto add = [&](const Letters& w1, const ModuleLetter& u, const Letters& w2) {
        long long g = grading(alpha, w1) + u.grading(alpha) + grading(alpha, w2);
        if (!in_range(g, lo, hi))
            return;
        basis.push_back({w1, u, w2, static_cast<int>(g)});
        a.b.add(static_cast<int>(g), module_label(alpha, w1, u, w2));
    };
    for (const auto& w : words) {
        for (std::size_t cut = 0; cut <= w.size(); ++cut) {
            Letters w1 = slice(w, 0, cut), w2 = slice(w, cut, w.size());
            if (w.empty()) {
                for (int i = 0; i < dga.components(); ++i)
                    add({}, ModuleLetter{true, static_cast<uint32_t>(i)}, {});
                continue;
            }
            // x_i sits at the component joining w1 and w2.
            int comp = cut == 0 ? alpha[w[0]].dst : alpha[w[cut - 1]].src;
            add(w1, ModuleLetter{true, static_cast<uint32_t>(comp)}, w2);
            if (cut < w.size())
                add(w1, ModuleLetter{false, w[cut]}, slice(w, cut + 1, w.size()));
        }
    }
    for (const auto& e : basis) {
        if (e.deg <= lo)
            continue;
        std::string src = module_label(alpha, e.w1, e.u, e.w2);
        for (const auto& t : module_differential(dga, e.w1, e.u, e.w2))
            a.entry(e.deg, src, module_label(alpha, t.w1, t.u, t.w2), t.coeff);
    }
    return a.finish("M", window, v);
}

GradedChainComplex build_module_Mcyc(const Dga& dga, const Window& window)
{
    const Alphabet& alpha = dga.alphabet;
    GuardVerdict v = guard_or_throw(alpha, window, 1);
    int lo = window.min_deg - 1, hi = window.max_deg + 1;
    auto words = enumerate_words(alpha, true, v.max_len, lo - 1, hi, weights_of(window), window.max_weight);

    std::vector<std::pair<ModuleLetter, Letters>> basis;
    Assembly a;
    auto add = [&](const ModuleLetter& u, const Letters& w) {
        long long g = u.grading(alpha) + grading(alpha, w);
        if (!in_range(g, lo, hi))
            return;
        basis.push_back({u, w});
        a.b.add(static_cast<int>(g), mcyc_label(alpha, u, w));
    };
    for (int i = 0; i < dga.components(); ++i)
        add(ModuleLetter{true, static_cast<uint32_t>(i)}, {});
    for (const auto& w : words) {
        add(ModuleLetter{true, static_cast<uint32_t>(alpha[w[0]].dst)}, w);
        add(ModuleLetter{false, w[0]}, slice(w, 1, w.size()));
    }
    for (const auto& [u, w] : basis) {
        long long g = u.grading(alpha) + grading(alpha, w);
        if (g <= lo)
            continue;
        int deg = static_cast<int>(g);
        std::string src = mcyc_label(alpha, u, w);
        for (const auto& t : module_differential(dga, {}, u, w)) {
            auto [rest, s] = cyclic_reduce(alpha, t);
            a.entry(deg, src, mcyc_label(alpha, t.u, rest), t.coeff * s);
        }
    }
    return a.finish("M^cyc", window, v);
}

std::string mcyc_to_ho_label(const Alphabet& alpha, const std::string& label)
{
    auto close = label.find(']');
    if (label.empty() || label[0] != '[' || close == std::string::npos)
        throw InputError("not an M^cyc label: " + label);
    std::string u = label.substr(1, close - 1);
    Letters rest = parse_letters(alpha, label.substr(close + 1))[0];
    if (u.rfind("x_", 0) == 0) {
        if (rest.empty())
            return "tau_" + u.substr(2);
        return check_label(alpha, rest);
    }
    Letters w{alpha.id(u.substr(1))};
    w.insert(w.end(), rest.begin(), rest.end());
    return hat_label(alpha, w);
}

EnIsomorphismReport verify_en_isomorphism(const Dga& dga, const Window& window)
{
    EnIsomorphismReport r;
    r.mcyc = betti(build_module_Mcyc(dga, window));
    r.ho = betti(build_ho_complex(dga, window));
    r.betti_equal = r.mcyc.rank == r.ho.rank;
    return r;
}

std::map<Letters, Q> cyclic_image(const DgaMorphism& f, const Letters& w)
{
    std::map<Letters, Q> out;
    const Alphabet& alpha = f.target->alphabet;
    for (const auto& [v, coeff] : apply_morphism(f, Element::of(Word::of(w))).terms()) {
        if (v.empty())
            continue;
        CyclicWord cw = cyclic_class(alpha, v.letters);
        if (cw.is_zero)
            continue;
        Q& slot = out[cw.rep];
        slot += coeff * cw.sign;
        if (slot == 0)
            out.erase(cw.rep);
    }
    return out;
}

}  // namespace lsh
