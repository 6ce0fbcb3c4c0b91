#include "lsh/surgery.hpp"

#include "lsh/error.hpp"

namespace lsh {

int FillingModel::orbit_index(const std::string& label) const
{
    for (std::size_t i = 0; i < orbits.size(); ++i)
        if (orbits[i].label == label)
            return static_cast<int>(i);
    return -1;
}

int FillingModel::morse_index(const std::string& label) const
{
    for (std::size_t i = 0; i < morse.size(); ++i)
        if (morse[i].label == label)
            return static_cast<int>(i);
    return -1;
}

namespace {

void check_pair(const std::string& what, const CountKey& k, std::size_t src_size, std::size_t dst_size)
{
    if (k.first < 0 || static_cast<std::size_t>(k.first) >= src_size || k.second < 0 ||
        static_cast<std::size_t>(k.second) >= dst_size)
        throw InputError(what + " count refers to an unknown generator");
}

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw InputError(what);
}

}  // namespace

void validate_filling(const FillingModel& f)
{
    for (const auto& o : f.orbits)
        require(o.kappa >= 1, "orbit " + o.label + " has multiplicity below 1");
    for (const auto& [k, c] : f.ch_counts) {
        check_pair("orbit differential", k, f.orbits.size(), f.orbits.size());
        const auto &g = f.orbits[static_cast<std::size_t>(k.first)], &b = f.orbits[static_cast<std::size_t>(k.second)];
        require(b.grading == g.grading - 1, "orbit differential count " + g.label + " -> " + b.label +
                                                " violates |beta| = |gamma| - 1");
    }
    for (const auto& [k, c] : f.delta_counts) {
        check_pair("mixed orbit", k, f.orbits.size(), f.orbits.size());
        const auto &g = f.orbits[static_cast<std::size_t>(k.first)], &b = f.orbits[static_cast<std::size_t>(k.second)];
        require(b.grading == g.grading - 2,
                "mixed orbit count " + g.label + " -> " + b.label + " violates |beta| = |gamma| - 2");
    }
    for (const auto& [k, c] : f.morse_diff) {
        check_pair("Morse differential", k, f.morse.size(), f.morse.size());
        require(f.morse[static_cast<std::size_t>(k.second)].grading == f.morse[static_cast<std::size_t>(k.first)].grading - 1,
                "Morse differential count violates |p'| = |p| - 1");
    }
    for (const auto& [k, c] : f.theta_counts) {
        check_pair("orbit-to-Morse", k, f.orbits.size(), f.morse.size());
        const auto& g = f.orbits[static_cast<std::size_t>(k.first)];
        const auto& p = f.morse[static_cast<std::size_t>(k.second)];
        require(g.grading - p.grading == 1, "orbit-to-Morse count " + g.label + " -> " + p.label +
                                                 " violates |gamma| - |p| = 1");
    }
}

FillingModel builtin_ball_filling(int n, int max_grading)
{
    if (n < 2)
        throw InputError("ball filling needs n >= 2");
    FillingModel f;
    f.n = n;
    for (int k = 1; n - 1 + 2 * k <= max_grading; ++k)
        f.orbits.push_back({"g^" + std::to_string(k), n - 1 + 2 * k, k, true});
    for (std::size_t k = 1; k < f.orbits.size(); ++k)
        f.delta_counts[{static_cast<int>(k), static_cast<int>(k - 1)}] = 1;
    f.morse.push_back({"p", n});
    if (!f.orbits.empty())
        f.theta_counts[{0, 0}] = 1;
    return f;
}

void validate_counts(const FillingModel& f, const Dga& dga, const SurgeryCounts& c)
{
    const Alphabet& alpha = dga.alphabet;
    auto word_ok = [&](const WordCount& w, int gap, const char* what) {
        require(w.orbit >= 0 && static_cast<std::size_t>(w.orbit) < f.orbits.size(),
                std::string(what) + " count refers to an unknown orbit");
        require(!w.word.empty() && is_cyclically_composable(alpha, w.word),
                std::string(what) + " count needs a nonempty cyclically composable word");
        const Orbit& o = f.orbits[static_cast<std::size_t>(w.orbit)];
        require(o.grading - grading(alpha, w.word) == gap, std::string(what) + " count " + o.label + " -> " +
                                                               format_letters(alpha, w.word) + " violates |gamma| - |w| = " +
                                                               std::to_string(gap));
    };
    for (const auto& w : c.mixed)
        word_ok(w, 1, "mixed");
    for (const auto& w : c.check)
        word_ok(w, 1, "check");
    for (const auto& w : c.hat)
        word_ok(w, 2, "hat");
    for (const auto& [k, v] : c.tau) {
        check_pair("orbit-to-tau", k, f.orbits.size(), static_cast<std::size_t>(dga.components()));
        require(f.orbits[static_cast<std::size_t>(k.first)].grading == 1, "orbit-to-tau count needs |gamma| = 1");
    }
    for (const auto& [k, v] : c.morse_tau) {
        check_pair("Morse-to-tau", k, f.morse.size(), static_cast<std::size_t>(dga.components()));
        require(f.morse[static_cast<std::size_t>(k.first)].grading == 1, "Morse-to-tau count needs |p| = 1");
    }
}

std::string orbit_label(const Orbit& o) { return "<" + o.label + ">"; }
std::string orbit_check_label(const Orbit& o) { return "<" + o.label + ">chk"; }
std::string orbit_hat_label(const Orbit& o) { return "<" + o.label + ">hat"; }
std::string morse_label(const MorseGenerator& p) { return "<" + p.label + ">"; }

namespace {

bool in_range(int g, int lo, int hi) { return g >= lo && g <= hi; }

struct Assembly {
    ComplexBuilder b;
    std::size_t dropped = 0;
    Guard guard = Guard::Exact;
    int max_len = 0;

    void entry(int degree, const std::string& src, const std::string& dst, const Q& c)
    {
        if (c != 0 && !b.add_entry(degree, src, dst, c))
            ++dropped;
    }
    void absorb(const GradedChainComplex& c)
    {
        b.add_complex(c);
        dropped += c.dropped_terms;
        if (c.guard == Guard::Truncated)
            guard = Guard::Truncated;
        max_len = std::max(max_len, c.max_len);
    }
    GradedChainComplex finish(const std::string& name, const Window& w) const
    {
        GradedChainComplex c = b.finish(name, w.min_deg, w.max_deg);
        c.dropped_terms = dropped;
        c.guard = guard;
        c.max_len = max_len;
        return c;
    }
};

const Orbit& orbit(const FillingModel& f, int i) { return f.orbits[static_cast<std::size_t>(i)]; }
const MorseGenerator& morse(const FillingModel& f, int i) { return f.morse[static_cast<std::size_t>(i)]; }

// Orbit part of CH; only good orbits.
void add_ch(Assembly& a, const FillingModel& f, const Window& w, KappaConvention conv)
{
    int lo = w.min_deg - 1, hi = w.max_deg + 1;
    for (const auto& o : f.orbits)
        if (o.good && in_range(o.grading, lo, hi))
            a.b.add(o.grading, orbit_label(o));
    for (const auto& [k, c] : f.ch_counts) {
        const Orbit &g = orbit(f, k.first), &b = orbit(f, k.second);
        if (!g.good || !b.good || !in_range(g.grading, lo + 1, hi))
            continue;
        int kappa = conv == KappaConvention::DivideByTarget ? b.kappa : g.kappa;
        a.entry(g.grading, orbit_label(g), orbit_label(b), c / kappa);
    }
}

void add_shplus(Assembly& a, const FillingModel& f, const Window& w)
{
    int lo = w.min_deg - 1, hi = w.max_deg + 1;
    for (const auto& o : f.orbits) {
        if (in_range(o.grading, lo, hi))
            a.b.add(o.grading, orbit_check_label(o));
        if (in_range(o.grading + 1, lo, hi))
            a.b.add(o.grading + 1, orbit_hat_label(o));
    }
    for (const auto& [k, c] : f.ch_counts) {
        const Orbit &g = orbit(f, k.first), &b = orbit(f, k.second);
        if (in_range(g.grading, lo + 1, hi))
            a.entry(g.grading, orbit_check_label(g), orbit_check_label(b), c / b.kappa);
        if (in_range(g.grading + 1, lo + 1, hi))
            a.entry(g.grading + 1, orbit_hat_label(g), orbit_hat_label(b), c / g.kappa);
    }
    for (const auto& o : f.orbits)
        if (!o.good && in_range(o.grading + 1, lo + 1, hi))
            a.entry(o.grading + 1, orbit_hat_label(o), orbit_check_label(o), 2);
    for (const auto& [k, c] : f.delta_counts) {
        const Orbit &g = orbit(f, k.first), &b = orbit(f, k.second);
        if (in_range(g.grading, lo + 1, hi))
            a.entry(g.grading, orbit_check_label(g), orbit_hat_label(b), c);
    }
}

void add_morse(Assembly& a, const FillingModel& f, const Window& w)
{
    int lo = w.min_deg - 1, hi = w.max_deg + 1;
    for (const auto& p : f.morse)
        if (in_range(p.grading, lo, hi))
            a.b.add(p.grading, morse_label(p));
    for (const auto& [k, c] : f.morse_diff) {
        const MorseGenerator& p = morse(f, k.first);
        if (in_range(p.grading, lo + 1, hi))
            a.entry(p.grading, morse_label(p), morse_label(morse(f, k.second)), c);
    }
    for (const auto& [k, c] : f.theta_counts) {
        const Orbit& g = orbit(f, k.first);
        if (in_range(g.grading, lo + 1, hi))
            a.entry(g.grading, orbit_check_label(g), morse_label(morse(f, k.second)), c);
    }
}

// delta_{SLH+}: hat(gamma) -> n/kappa(gamma) S(w); check(gamma) -> check and hat counts.
void add_slh_plus_mixing(Assembly& a, const FillingModel& f, const Dga& dga, const SurgeryCounts& c, const Window& w)
{
    const Alphabet& alpha = dga.alphabet;
    int lo = w.min_deg - 1, hi = w.max_deg + 1;
    for (const auto& m : c.mixed) {
        const Orbit& g = orbit(f, m.orbit);
        if (!in_range(g.grading + 1, lo + 1, hi))
            continue;
        for (const auto& [dec, s] : s_operator(alpha, Word::of(m.word))) {
            auto [front, rs] = mark_to_front(alpha, dec);
            a.entry(g.grading + 1, orbit_hat_label(g), hat_label(alpha, front), m.coeff * (s * rs) / g.kappa);
        }
    }
    for (const auto& m : c.check) {
        const Orbit& g = orbit(f, m.orbit);
        if (in_range(g.grading, lo + 1, hi))
            a.entry(g.grading, orbit_check_label(g), check_label(alpha, m.word), m.coeff);
    }
    for (const auto& m : c.hat) {
        const Orbit& g = orbit(f, m.orbit);
        if (in_range(g.grading, lo + 1, hi))
            a.entry(g.grading, orbit_check_label(g), hat_label(alpha, m.word), m.coeff);
    }
}

}  // namespace

GradedChainComplex build_ch_complex(const FillingModel& f, const Window& window, KappaConvention conv)
{
    validate_filling(f);
    Assembly a;
    add_ch(a, f, window, conv);
    return a.finish("CH", window);
}

GradedChainComplex build_shplus_complex(const FillingModel& f, const Window& window)
{
    validate_filling(f);
    Assembly a;
    add_shplus(a, f, window);
    return a.finish("SH+", window);
}

GradedChainComplex build_sh_complex(const FillingModel& f, const Window& window)
{
    validate_filling(f);
    Assembly a;
    add_shplus(a, f, window);
    add_morse(a, f, window);
    return a.finish("SH", window);
}

GradedChainComplex build_lch_surgery(const FillingModel& f, const Dga& dga, const SurgeryCounts& c, const Window& window)
{
    validate_filling(f);
    validate_counts(f, dga, c);
    Assembly a;
    add_ch(a, f, window, KappaConvention::DivideByTarget);
    a.absorb(build_cyclic_complex(dga, window));
    int lo = window.min_deg - 1, hi = window.max_deg + 1;
    for (const auto& m : c.mixed) {
        const Orbit& g = orbit(f, m.orbit);
        if (!g.good || !in_range(g.grading, lo + 1, hi))
            continue;
        CyclicWord cw = cyclic_class(dga.alphabet, m.word);
        if (!cw.is_zero)
            a.entry(g.grading, orbit_label(g), cyclic_label(dga.alphabet, cw.rep), m.coeff * cw.sign / cw.kappa);
    }
    return a.finish("LCH", window);
}

GradedChainComplex build_shplus_surgery(const FillingModel& f, const Dga& dga, const SurgeryCounts& c,
                                        const Window& window)
{
    validate_filling(f);
    validate_counts(f, dga, c);
    Assembly a;
    add_shplus(a, f, window);
    a.absorb(build_hoplus_complex(dga, window));
    add_slh_plus_mixing(a, f, dga, c, window);
    return a.finish("SLH+", window);
}

GradedChainComplex build_sh_surgery(const FillingModel& f, const Dga& dga, const SurgeryCounts& c,
                                    const Window& window, const HoComplexSpec* ho)
{
    validate_filling(f);
    validate_counts(f, dga, c);
    Assembly a;
    add_shplus(a, f, window);
    add_morse(a, f, window);
    a.absorb(ho ? build_ho_complex(*ho, window) : build_ho_complex(dga, window));
    add_slh_plus_mixing(a, f, dga, c, window);
    int lo = window.min_deg - 1, hi = window.max_deg + 1;
    for (const auto& [k, v] : c.tau) {
        const Orbit& g = orbit(f, k.first);
        if (in_range(g.grading, lo + 1, hi))
            a.entry(g.grading, orbit_check_label(g), tau_label(k.second), v);
    }
    for (const auto& [k, v] : c.morse_tau) {
        const MorseGenerator& p = morse(f, k.first);
        if (in_range(p.grading, lo + 1, hi))
            a.entry(p.grading, morse_label(p), tau_label(k.second), v);
    }
    return a.finish("SLH", window);
}

CobordismMap assemble_cobordism_map(const CobordismCounts& counts, const FillingModel& source,
                                    const FillingModel& target, Theory theory, const Window& window)
{
    CobordismMap out;
    switch (theory) {
    case Theory::CH:
        out.source = build_ch_complex(source, window);
        out.target = build_ch_complex(target, window);
        break;
    case Theory::SHPlus:
        out.source = build_shplus_complex(source, window);
        out.target = build_shplus_complex(target, window);
        break;
    case Theory::SH:
        out.source = build_sh_complex(source, window);
        out.target = build_sh_complex(target, window);
        break;
    }
    int lo = window.min_deg - 1, hi = window.max_deg + 1;
    ChainMapBuilder b(out.source, out.target);
    auto orbit_pair = [&](const CountKey& k, int gap, const char* what) {
        check_pair(what, k, source.orbits.size(), target.orbits.size());
        const Orbit& g = orbit(source, k.first);
        const Orbit& be = orbit(target, k.second);
        require(g.grading - be.grading == gap, std::string(what) + " count " + g.label + " -> " + be.label +
                                                   " violates its grading constraint");
        return std::pair<const Orbit&, const Orbit&>(g, be);
    };
    for (const auto& [k, c] : counts.n) {
        auto [g, be] = orbit_pair(k, 0, "cobordism");
        if (theory == Theory::CH) {
            if (g.good && be.good && in_range(g.grading, lo, hi))
                b.add(g.grading, orbit_label(g), orbit_label(be), c / be.kappa);
            continue;
        }
        if (in_range(g.grading, lo, hi))
            b.add(g.grading, orbit_check_label(g), orbit_check_label(be), c / be.kappa);
        if (in_range(g.grading + 1, lo, hi))
            b.add(g.grading + 1, orbit_hat_label(g), orbit_hat_label(be), c / g.kappa);
    }
    if (theory != Theory::CH)
        for (const auto& [k, c] : counts.m) {
            auto [g, be] = orbit_pair(k, 1, "cobordism mixed");
            if (in_range(g.grading, lo, hi))
                b.add(g.grading, orbit_check_label(g), orbit_hat_label(be), c);
        }
    if (theory == Theory::SH) {
        for (const auto& [k, c] : counts.l) {
            check_pair("cobordism orbit-to-Morse", k, source.orbits.size(), target.morse.size());
            const Orbit& g = orbit(source, k.first);
            const MorseGenerator& p = morse(target, k.second);
            require(g.grading == p.grading, "cobordism orbit-to-Morse count violates |gamma| = |p|");
            if (in_range(g.grading, lo, hi))
                b.add(g.grading, orbit_check_label(g), morse_label(p), c);
        }
        for (const auto& p : source.morse) {
            int j = target.morse_index(p.label);
            if (j >= 0 && in_range(p.grading, lo, hi))
                b.add(p.grading, morse_label(p), morse_label(morse(target, j)), 1);
        }
    } else if (!counts.l.empty()) {
        throw InputError("orbit-to-Morse counts only apply to the full theory");
    }
    out.map = b.finish();
    out.report = verify_chain_map(out.source, out.target, out.map, window.min_deg, window.max_deg + 1);
    return out;
}

CobordismMap kappa_rescaling(const FillingModel& f, const Window& window)
{
    CobordismMap out;
    out.source = build_ch_complex(f, window, KappaConvention::DivideByTarget);
    out.target = build_ch_complex(f, window, KappaConvention::DivideBySource);
    ChainMapBuilder b(out.source, out.target);
    for (const auto& o : f.orbits)
        if (o.good && in_range(o.grading, window.min_deg - 1, window.max_deg + 1))
            b.add(o.grading, orbit_label(o), orbit_label(o), o.kappa);
    out.map = b.finish();
    out.report = verify_chain_map(out.source, out.target, out.map, window.min_deg, window.max_deg + 1);
    return out;
}

}  // namespace lsh
