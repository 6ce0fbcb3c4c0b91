#include "lsh/lefschetz.hpp"

#include "lsh/complexes.hpp"
#include "lsh/error.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_map>

namespace lsh {

namespace {

const char* kind_name(MorKind k)
{
    switch (k) {
    case MorKind::Unit: return "unit";
    case MorKind::Max: return "max";
    case MorKind::Fwd: return "forward";
    case MorKind::Bwd: return "backward";
    }
    return "?";
}

bool is_object_kind(MorKind k) { return k == MorKind::Unit || k == MorKind::Max; }

Morphism at_power(Morphism x, int p)
{
    x.power = p;
    return x;
}

// eps(x_1..x_r) = (-1)^{sum_m (m-1)(|x_m|'+1)}.
int dual_sign(const AinfSpec& spec, const std::vector<Morphism>& xs)
{
    long long e = 0;
    for (std::size_t m = 0; m < xs.size(); ++m)
        e += static_cast<long long>(m) * (shifted_degree(spec, xs[m]) + 1);
    return sign_of_parity(e);
}

long long degree_sum(const AinfSpec& spec, const std::vector<Morphism>& xs, std::size_t from, std::size_t to)
{
    long long s = 0;
    for (std::size_t l = from; l < to; ++l)
        s += shifted_degree(spec, xs[l]);
    return s;
}

// Calls f(powers) for every assignment p_l >= min_power(kind_l) with sum <= N.
void for_each_powers(const std::vector<MorKind>& kinds, int N, const std::function<void(const std::vector<int>&)>& f)
{
    std::vector<int> p(kinds.size());
    int base = 0;
    for (std::size_t l = 0; l < kinds.size(); ++l) {
        p[l] = min_power(kinds[l]);
        base += p[l];
    }
    if (base > N)
        return;
    // `used` counts the powers assigned so far; unassigned slots still owe their minimum.
    std::function<void(std::size_t, int, int)> go = [&](std::size_t l, int used, int owed) {
        if (l == kinds.size()) {
            f(p);
            return;
        }
        int lo = min_power(kinds[l]);
        for (int q = lo; used + q + (owed - lo) <= N; ++q) {
            p[l] = q;
            go(l + 1, used + q, owed - lo);
        }
        p[l] = lo;
    };
    go(0, 0, base);
}

bool point_less(const AinfSpec& spec, const std::vector<int>& position, int b, int a)
{
    const auto& pa = spec.points[static_cast<std::size_t>(a)];
    const auto& pb = spec.points[static_cast<std::size_t>(b)];
    if (pa.hi != pb.hi)
        return pb.hi < pa.hi;
    if (pa.lo != pb.lo)
        return pb.lo < pa.lo;
    return position[static_cast<std::size_t>(b)] < position[static_cast<std::size_t>(a)];
}

struct SeriesKey {
    MorKind kind;
    int index;
    auto operator<=>(const SeriesKey&) const = default;
};

Morphism key_morphism(MorKind kind, int index) { return Morphism{kind, index, 0}; }

// Cubic Morse-Bott terms for n = 2, as series identities d q_Y = coeff q_A q_B q_C.
std::vector<SeriesTerm> cubic_terms(const AinfSpec& spec)
{
    std::vector<SeriesTerm> out;
    if (spec.n != 2)
        return out;
    std::vector<int> position(spec.points.size(), 0);
    std::map<std::string, int> by_name;
    for (std::size_t a = 0; a < spec.points.size(); ++a)
        by_name[spec.points[a].name] = static_cast<int>(a);
    std::map<std::pair<int, int>, int> per_pair;
    for (const auto& p : spec.points)
        ++per_pair[{p.lo, p.hi}];
    bool ties = std::any_of(per_pair.begin(), per_pair.end(), [](const auto& kv) { return kv.second > 1; });
    if (ties) {
        if (spec.order.size() != spec.points.size())
            throw InputError("n = 2 needs an order on the intersection points; two points share a pair of spheres");
        std::set<std::string> seen;
        for (std::size_t r = 0; r < spec.order.size(); ++r) {
            auto it = by_name.find(spec.order[r]);
            if (it == by_name.end() || !seen.insert(spec.order[r]).second)
                throw InputError("order must list every intersection point once; bad entry \"" + spec.order[r] + "\"");
            position[static_cast<std::size_t>(it->second)] = static_cast<int>(r);
        }
    }
    auto F = [](int a) { return key_morphism(MorKind::Fwd, a); };
    auto B = [](int a) { return key_morphism(MorKind::Bwd, a); };
    auto M = [](int i) { return key_morphism(MorKind::Max, i); };
    int np = static_cast<int>(spec.points.size());
    for (int i = 0; i < spec.k; ++i)
        for (int a = 0; a < np; ++a) {
            const auto& pa = spec.points[static_cast<std::size_t>(a)];
            if (pa.hi == i)
                out.push_back({M(i), {M(i), F(a), B(a)}, Q(1)});
            if (pa.lo == i)
                out.push_back({M(i), {M(i), B(a), F(a)}, Q(1)});
        }
    for (int a = 0; a < np; ++a) {
        const auto& pa = spec.points[static_cast<std::size_t>(a)];
        int i = pa.lo, j = pa.hi;
        Q sf = sign_of_parity(pa.grading - 1);
        Q sb = sign_of_parity(pa.grading);
        for (int b = 0; b < np; ++b) {
            if (!point_less(spec, position, b, a))
                continue;
            const auto& pb = spec.points[static_cast<std::size_t>(b)];
            if (pb.hi == i) {
                out.push_back({F(a), {F(a), F(b), B(b)}, sf});
                out.push_back({B(a), {F(b), B(b), B(a)}, Q(-1)});
            }
            if (pb.lo == i) {
                out.push_back({F(a), {F(a), B(b), F(b)}, sf});
                out.push_back({B(a), {B(b), F(b), B(a)}, Q(-1)});
            }
            if (pb.hi == j) {
                out.push_back({F(a), {F(b), B(b), F(a)}, Q(-1)});
                out.push_back({B(a), {B(a), F(b), B(b)}, sb});
            }
            if (pb.lo == j) {
                out.push_back({F(a), {B(b), F(b), F(a)}, Q(-1)});
                out.push_back({B(a), {B(a), B(b), F(b)}, sb});
            }
        }
    }
    return out;
}

std::string inputs_text(const AinfSpec& spec, const std::vector<Morphism>& xs)
{
    std::string s = "mu^" + std::to_string(xs.size()) + "(";
    for (std::size_t l = 0; l < xs.size(); ++l)
        s += (l ? ", " : "") + morphism_label(spec, xs[l]);
    return s + ")";
}

}  // namespace

int min_power(MorKind kind) { return kind == MorKind::Fwd ? 0 : 1; }

void validate_spec(const AinfSpec& spec)
{
    if (spec.k < 1)
        throw InputError("a Lefschetz spec needs at least one sphere");
    if (spec.n < 2)
        throw InputError("n must be at least 2, got " + std::to_string(spec.n));
    std::set<std::string> names;
    Alphabet probe(1);
    for (const auto& p : spec.points) {
        if (p.lo < 0 || p.hi >= spec.k || p.lo >= p.hi)
            throw InputError("intersection point \"" + p.name + "\" must join spheres i < j in 1.." +
                             std::to_string(spec.k));
        if (!names.insert(p.name).second)
            throw InputError("duplicate intersection point \"" + p.name + "\"");
        probe.add({"qf_" + p.name + "_0", 0, 0, 0});
    }
    auto check_morphism = [&](const Morphism& x, std::size_t c) {
        int bound = is_object_kind(x.kind) ? spec.k : static_cast<int>(spec.points.size());
        if (x.index < 0 || x.index >= bound)
            throw InputError("constant " + std::to_string(c + 1) + " names a " + kind_name(x.kind) +
                             " morphism out of range");
    };
    for (std::size_t c = 0; c < spec.constants.size(); ++c) {
        const auto& k = spec.constants[c];
        if (k.inputs.empty())
            throw InputError("constant " + std::to_string(c + 1) + " has no inputs; curvature is fixed");
        check_morphism(k.output, c);
        for (const auto& x : k.inputs)
            check_morphism(x, c);
        if (k.output.kind == MorKind::Unit)
            throw InputError("constant " + std::to_string(c + 1) + " has a unit as output");
        for (std::size_t l = 0; l + 1 < k.inputs.size(); ++l)
            if (target_object(spec, k.inputs[l]) != source_object(spec, k.inputs[l + 1]))
                throw InputError("constant " + std::to_string(c + 1) + " has non-composable inputs " +
                                 inputs_text(spec, k.inputs));
        if (source_object(spec, k.inputs.front()) != source_object(spec, k.output) ||
            target_object(spec, k.inputs.back()) != target_object(spec, k.output))
            throw InputError("constant " + std::to_string(c + 1) + " has an output with the wrong endpoints");
        std::vector<Morphism> base;
        for (const auto& x : k.inputs)
            base.push_back(at_power(x, 0));
        long long want = degree_sum(spec, base, 0, base.size()) + 1;
        if (shifted_degree(spec, at_power(k.output, 0)) != want)
            throw InputError("constant " + std::to_string(c + 1) + " " + inputs_text(spec, k.inputs) +
                             " has output of degree " +
                             std::to_string(shifted_degree(spec, at_power(k.output, 0))) + ", expected " +
                             std::to_string(want));
    }
}

int shifted_degree(const AinfSpec& spec, const Morphism& x)
{
    switch (x.kind) {
    case MorKind::Unit: return 2 * x.power - 1;
    case MorKind::Max: return spec.n - 2 + 2 * x.power;
    case MorKind::Fwd: return spec.points.at(static_cast<std::size_t>(x.index)).grading + 2 * x.power;
    case MorKind::Bwd: return spec.n - 3 - spec.points.at(static_cast<std::size_t>(x.index)).grading + 2 * x.power;
    }
    return 0;
}

int source_object(const AinfSpec& spec, const Morphism& x)
{
    switch (x.kind) {
    case MorKind::Unit:
    case MorKind::Max: return x.index;
    case MorKind::Fwd: return spec.points.at(static_cast<std::size_t>(x.index)).lo;
    case MorKind::Bwd: return spec.points.at(static_cast<std::size_t>(x.index)).hi;
    }
    return 0;
}

int target_object(const AinfSpec& spec, const Morphism& x)
{
    switch (x.kind) {
    case MorKind::Unit:
    case MorKind::Max: return x.index;
    case MorKind::Fwd: return spec.points.at(static_cast<std::size_t>(x.index)).hi;
    case MorKind::Bwd: return spec.points.at(static_cast<std::size_t>(x.index)).lo;
    }
    return 0;
}

std::string morphism_label(const AinfSpec& spec, const Morphism& x)
{
    std::string base;
    switch (x.kind) {
    case MorKind::Unit: base = "e_" + std::to_string(x.index + 1); break;
    case MorKind::Max: base = "m_" + std::to_string(x.index + 1); break;
    case MorKind::Fwd: base = spec.points.at(static_cast<std::size_t>(x.index)).name; break;
    case MorKind::Bwd: base = spec.points.at(static_cast<std::size_t>(x.index)).name + "*"; break;
    }
    if (x.power == 0)
        return base;
    if (x.power == 1)
        return "t " + base;
    return "t^" + std::to_string(x.power) + " " + base;
}

std::string chord_name(const AinfSpec& spec, const Morphism& x)
{
    std::string p = "_" + std::to_string(x.power);
    switch (x.kind) {
    case MorKind::Unit: return "qm_" + std::to_string(x.index + 1) + p;
    case MorKind::Max: return "qp_" + std::to_string(x.index + 1) + p;
    case MorKind::Fwd: return "qf_" + spec.points.at(static_cast<std::size_t>(x.index)).name + p;
    case MorKind::Bwd: return "qb_" + spec.points.at(static_cast<std::size_t>(x.index)).name + p;
    }
    return "";
}

CurvedAinf build_curved_category(const AinfSpec& spec, int N)
{
    validate_spec(spec);
    if (N < 0)
        throw InputError("truncation order must be non-negative");
    CurvedAinf cat;
    cat.spec = spec;
    cat.N = N;
    auto& T = cat.terms;

    for (int i = 0; i < spec.k && N >= 1; ++i)
        T.push_back({{}, Morphism{MorKind::Unit, i, 1}, Q(1)});

    // Strict units: mu^2(t^k e, x) = t^k x = mu^2(x, t^k e).
    std::vector<Morphism> basis;
    for (auto kind : {MorKind::Unit, MorKind::Max})
        for (int i = 0; i < spec.k; ++i)
            for (int p = 1; p <= N; ++p)
                basis.push_back({kind, i, p});
    for (auto kind : {MorKind::Fwd, MorKind::Bwd})
        for (int a = 0; a < static_cast<int>(spec.points.size()); ++a)
            for (int p = min_power(kind); p <= N; ++p)
                basis.push_back({kind, a, p});
    for (const auto& x : basis)
        for (int k = 1; k + x.power <= N; ++k) {
            Morphism out = at_power(x, x.power + k);
            T.push_back({{Morphism{MorKind::Unit, source_object(spec, x), k}, x}, out, Q(1)});
            if (x.kind != MorKind::Unit)
                T.push_back({{x, Morphism{MorKind::Unit, target_object(spec, x), k}}, out, Q(1)});
        }

    // Poincare duality on each sphere: a* a and a a* land on the top class.
    for (int a = 0; a < static_cast<int>(spec.points.size()); ++a) {
        const auto& pt = spec.points[static_cast<std::size_t>(a)];
        Q back_fwd = sign_of_parity(pt.grading + 1);
        Q fwd_back = sign_of_parity((spec.n + 1) * (pt.grading + 1));
        for (int s = 0; s <= N; ++s)
            for (int u = 1; s + u <= N; ++u) {
                Morphism f{MorKind::Fwd, a, s}, b{MorKind::Bwd, a, u};
                T.push_back({{b, f}, Morphism{MorKind::Max, pt.hi, s + u}, back_fwd});
                T.push_back({{f, b}, Morphism{MorKind::Max, pt.lo, s + u}, fwd_back});
            }
    }

    auto add_linear = [&](const std::vector<Morphism>& inputs, const Morphism& output, const Q& coeff) {
        std::vector<MorKind> kinds;
        for (const auto& x : inputs)
            kinds.push_back(x.kind);
        for_each_powers(kinds, N, [&](const std::vector<int>& p) {
            int total = 0;
            std::vector<Morphism> in;
            for (std::size_t l = 0; l < inputs.size(); ++l) {
                in.push_back(at_power(inputs[l], p[l]));
                total += p[l];
            }
            if (total < min_power(output.kind))
                return;
            T.push_back({in, at_power(output, total), coeff});
        });
    };

    // Cubic Morse-Bott products, transported from their dual series through eps.
    for (const auto& c : cubic_terms(spec)) {
        std::vector<Morphism> inputs(c.word.rbegin(), c.word.rend());
        add_linear(inputs, c.output, c.coeff * dual_sign(spec, inputs));
    }

    for (std::size_t c = 0; c < spec.constants.size(); ++c) {
        const auto& k = spec.constants[c];
        bool has_unit = std::any_of(k.inputs.begin(), k.inputs.end(),
                                    [](const Morphism& x) { return x.kind == MorKind::Unit; });
        if (has_unit) {
            bool restates_unit = k.inputs.size() == 2 && k.coeff == 1 &&
                                 ((k.inputs[0].kind == MorKind::Unit && at_power(k.inputs[1], 0) == at_power(k.output, 0)) ||
                                  (k.inputs[1].kind == MorKind::Unit && at_power(k.inputs[0], 0) == at_power(k.output, 0)));
            if (restates_unit)
                continue;
            cat.unit_violations.push_back("constant " + std::to_string(c + 1) + ": " + inputs_text(spec, k.inputs) +
                                          " = " + to_string(k.coeff) + " " + morphism_label(spec, at_power(k.output, 0)) +
                                          " breaks strict unitality");
        }
        add_linear(k.inputs, k.output, k.coeff);
    }
    return cat;
}

AinfReport check_curved_ainf(const CurvedAinf& cat)
{
    const AinfSpec& spec = cat.spec;
    std::map<Morphism, std::vector<const AinfConstant*>> by_output;
    for (const auto& t : cat.terms)
        by_output[t.output].push_back(&t);

    std::map<std::pair<Morphism, std::vector<Morphism>>, Q> acc;
    for (const auto& outer : cat.terms) {
        const auto& z = outer.inputs;
        int so = dual_sign(spec, z);
        for (std::size_t i = 0; i < z.size(); ++i) {
            auto it = by_output.find(z[i]);
            if (it == by_output.end())
                continue;
            int after = sign_of_parity(degree_sum(spec, z, i + 1, z.size()));
            for (const AinfConstant* inner : it->second) {
                std::vector<Morphism> in(z.begin(), z.begin() + static_cast<long>(i));
                in.insert(in.end(), inner->inputs.begin(), inner->inputs.end());
                in.insert(in.end(), z.begin() + static_cast<long>(i) + 1, z.end());
                acc[{outer.output, in}] += outer.coeff * inner->coeff * (so * dual_sign(spec, inner->inputs) * after);
            }
        }
    }
    AinfReport r;
    for (auto& [key, v] : acc)
        if (v != 0)
            r.failures.push_back({key.second, key.first, v});
    r.unit_violations = cat.unit_violations;
    return r;
}

ChordBasis chord_basis(const AinfSpec& spec, int N)
{
    validate_spec(spec);
    ChordBasis b{Dga(spec.k, spec.n), {}, {}, {}};
    auto add = [&](const Morphism& x) {
        uint32_t id = b.dga.add_generator(
            {chord_name(spec, x), shifted_degree(spec, x), source_object(spec, x), target_object(spec, x)});
        b.chord[x] = id;
        b.morphism.push_back(x);
        b.weights.push_back(x.power);
    };
    for (auto kind : {MorKind::Unit, MorKind::Max})
        for (int i = 0; i < spec.k; ++i)
            for (int p = 1; p <= N; ++p)
                add({kind, i, p});
    for (auto kind : {MorKind::Fwd, MorKind::Bwd})
        for (int a = 0; a < static_cast<int>(spec.points.size()); ++a)
            for (int p = min_power(kind); p <= N; ++p)
                add({kind, a, p});
    return b;
}

Dga dualize_tensor_algebra(const CurvedAinf& cat)
{
    ChordBasis b = chord_basis(cat.spec, cat.N);
    std::vector<Element> d(b.dga.alphabet.size());
    for (const auto& t : cat.terms) {
        uint32_t y = b.chord.at(t.output);
        if (t.inputs.empty()) {
            d[y].add(Word::idempotent(source_object(cat.spec, t.output)), t.coeff);
            continue;
        }
        Letters w;
        for (auto it = t.inputs.rbegin(); it != t.inputs.rend(); ++it)
            w.push_back(b.chord.at(*it));
        d[y].add(Word::of(std::move(w)), t.coeff * dual_sign(cat.spec, t.inputs));
    }
    for (uint32_t id = 0; id < d.size(); ++id)
        b.dga.set_differential(id, std::move(d[id]));
    return std::move(b.dga);
}

std::vector<SeriesTerm> dual_h_terms(const AinfSpec& spec)
{
    std::vector<SeriesTerm> out;
    for (const auto& c : spec.constants) {
        std::vector<Morphism> base;
        for (const auto& x : c.inputs)
            base.push_back(at_power(x, 0));
        out.push_back({at_power(c.output, 0), {base.rbegin(), base.rend()}, c.coeff * dual_sign(spec, base)});
    }
    return out;
}

Dga lefschetz_dga(const AinfSpec& spec, const std::vector<SeriesTerm>& dh, int N)
{
    ChordBasis b = chord_basis(spec, N);
    const Alphabet& alpha = b.dga.alphabet;
    const int n = spec.n;

    std::map<SeriesKey, TruncatedSeries> q;
    for (const auto& [x, id] : b.chord) {
        auto [it, fresh] = q.try_emplace(SeriesKey{x.kind, x.index}, N);
        (void)fresh;
        it->second.at(x.power) = Element::of(Word::of({id}));
    }
    auto Q_ = [&](MorKind kind, int index) -> const TruncatedSeries& { return q.at(SeriesKey{kind, index}); };
    auto mul = [&](const TruncatedSeries& x, const TruncatedSeries& y) { return series_multiply(alpha, x, y); };
    auto scale = [](TruncatedSeries s, const Q& c) {
        for (auto& e : s.coeff)
            e = e.scaled(c);
        return s;
    };

    std::map<SeriesKey, TruncatedSeries> dq;
    auto acc = [&](MorKind kind, int index, const TruncatedSeries& s) {
        auto [it, fresh] = dq.try_emplace(SeriesKey{kind, index}, N);
        (void)fresh;
        it->second = series_add(it->second, s);
    };

    for (int i = 0; i < spec.k && N >= 1; ++i) {
        const auto& qm = Q_(MorKind::Unit, i);
        const auto& qp = Q_(MorKind::Max, i);
        acc(MorKind::Unit, i, mul(qm, qm));
        acc(MorKind::Max, i, mul(qm, qp));
        acc(MorKind::Max, i, scale(mul(qp, qm), sign_of_parity(n - 1)));
    }
    for (int a = 0; a < static_cast<int>(spec.points.size()); ++a) {
        const auto& pt = spec.points[static_cast<std::size_t>(a)];
        const auto& qf = Q_(MorKind::Fwd, a);
        if (N < 1)
            continue;
        const auto& qb = Q_(MorKind::Bwd, a);
        acc(MorKind::Max, pt.hi, mul(qf, qb));
        acc(MorKind::Max, pt.lo, scale(mul(qb, qf), sign_of_parity(n * pt.grading + 1)));
        acc(MorKind::Fwd, a, mul(Q_(MorKind::Unit, pt.hi), qf));
        acc(MorKind::Fwd, a, scale(mul(qf, Q_(MorKind::Unit, pt.lo)), sign_of_parity(pt.grading - 1)));
        acc(MorKind::Bwd, a, mul(Q_(MorKind::Unit, pt.lo), qb));
        acc(MorKind::Bwd, a, scale(mul(qb, Q_(MorKind::Unit, pt.hi)), sign_of_parity(n - 2 - pt.grading)));
    }

    auto add_term = [&](const SeriesTerm& t) {
        if (t.word.empty())
            throw InputError("d_h term with an empty word");
        auto key = [&](const Morphism& x) {
            auto it = q.find(SeriesKey{x.kind, x.index});
            if (it == q.end())
                throw InputError("d_h term names a series with no chords below the truncation order");
            return it->second;
        };
        TruncatedSeries prod = key(t.word[0]);
        for (std::size_t l = 1; l < t.word.size(); ++l)
            prod = mul(prod, key(t.word[l]));
        acc(t.output.kind, t.output.index, scale(prod, t.coeff));
    };
    if (N >= 1)
        for (const auto& t : cubic_terms(spec))
            add_term(t);
    for (const auto& t : dh)
        add_term(t);

    for (const auto& [x, id] : b.chord) {
        Element dc;
        auto it = dq.find(SeriesKey{x.kind, x.index});
        if (it != dq.end())
            dc = it->second.at(x.power);
        if (x.kind == MorKind::Unit && x.power == 1)
            dc.add(Word::idempotent(x.index), Q(1));
        b.dga.set_differential(id, std::move(dc));
    }
    return std::move(b.dga);
}

namespace {

enum class HhKind { Unit, Check, Hat };

struct HhCell {
    HhKind kind;
    int object;
    std::vector<Morphism> x;
};

std::string hh_label(const AinfSpec& spec, const HhCell& c)
{
    std::string s = c.kind == HhKind::Hat ? "[1]" : "e_" + std::to_string(c.object + 1);
    for (const auto& m : c.x)
        s += "|" + morphism_label(spec, m);
    return s;
}

int hh_degree(const AinfSpec& spec, const HhCell& c)
{
    long long s = degree_sum(spec, c.x, 0, c.x.size());
    return static_cast<int>(c.kind == HhKind::Hat ? -s - 1 : -s);
}

// Cyclic tensor words x_1..x_k with target(x_l) = source(x_{l+1}) and total power <= N.
std::vector<std::vector<Morphism>> cyclic_tensors(const AinfSpec& spec, int N)
{
    std::vector<Morphism> basis;
    for (auto kind : {MorKind::Unit, MorKind::Max})
        for (int i = 0; i < spec.k; ++i)
            for (int p = 1; p <= N; ++p)
                basis.push_back({kind, i, p});
    for (auto kind : {MorKind::Fwd, MorKind::Bwd})
        for (int a = 0; a < static_cast<int>(spec.points.size()); ++a)
            for (int p = min_power(kind); p <= N; ++p)
                basis.push_back({kind, a, p});
    std::vector<std::vector<Morphism>> out;
    std::vector<Morphism> w;
    // Power-0 letters strictly raise the object index, so every branch terminates.
    std::function<void(int)> grow = [&](int used) {
        if (!w.empty() && target_object(spec, w.back()) == source_object(spec, w.front()))
            out.push_back(w);
        for (const auto& m : basis) {
            if (used + m.power > N)
                continue;
            if (!w.empty() && target_object(spec, w.back()) != source_object(spec, m))
                continue;
            w.push_back(m);
            grow(used + m.power);
            w.pop_back();
        }
    };
    grow(0);
    return out;
}

std::vector<HhCell> hh_cells(const CurvedAinf& cat)
{
    std::vector<HhCell> cells;
    for (int i = 0; i < cat.spec.k; ++i)
        cells.push_back({HhKind::Unit, i, {}});
    for (const auto& x : cyclic_tensors(cat.spec, cat.N)) {
        int i = source_object(cat.spec, x.front());
        cells.push_back({HhKind::Check, i, x});
        cells.push_back({HhKind::Hat, i, x});
    }
    return cells;
}

}  // namespace

GradedChainComplex hochschild_complex(const CurvedAinf& cat)
{
    const AinfSpec& spec = cat.spec;
    std::map<std::vector<Morphism>, std::vector<const AinfConstant*>> by_inputs;
    std::vector<const AinfConstant*> curvature;
    for (const auto& t : cat.terms) {
        if (t.inputs.empty())
            curvature.push_back(&t);
        else
            by_inputs[t.inputs].push_back(&t);
    }

    ComplexBuilder b;
    auto cells = hh_cells(cat);
    for (const auto& c : cells)
        b.add(hh_degree(spec, c), hh_label(spec, c));
    std::size_t dropped = 0;
    auto entry = [&](const HhCell& src, const HhCell& dst, const Q& coeff) {
        if (coeff == 0)
            return;
        if (!b.add_entry(hh_degree(spec, src), hh_label(spec, src), hh_label(spec, dst), coeff))
            ++dropped;
    };
    auto splice = [](const std::vector<Morphism>& x, std::size_t from, std::size_t to, const Morphism& y) {
        std::vector<Morphism> r(x.begin(), x.begin() + static_cast<long>(from));
        r.push_back(y);
        r.insert(r.end(), x.begin() + static_cast<long>(to), x.end());
        return r;
    };

    for (const auto& c : cells) {
        const auto& x = c.x;
        const std::size_t k = x.size();
        if (c.kind == HhKind::Unit) {
            for (const auto* t : curvature)
                if (source_object(spec, t->output) == c.object)
                    entry(c, {HhKind::Check, c.object, {t->output}}, t->coeff);
            continue;
        }
        // Inner blocks x_b..x_{b+r-1}; a hat cell keeps its last factor out of them.
        std::size_t limit = c.kind == HhKind::Hat ? k - 1 : k;
        int outer = c.kind == HhKind::Hat ? -1 : 1;
        for (std::size_t from = 0; from < limit; ++from)
            for (std::size_t to = from + 1; to <= limit; ++to) {
                std::vector<Morphism> block(x.begin() + static_cast<long>(from), x.begin() + static_cast<long>(to));
                auto it = by_inputs.find(block);
                if (it == by_inputs.end())
                    continue;
                int s = outer * dual_sign(spec, block) * sign_of_parity(degree_sum(spec, x, to, k));
                for (const auto* t : it->second)
                    entry(c, {c.kind, c.object, splice(x, from, to, t->output)}, t->coeff * s);
            }
        for (std::size_t at = 0; at <= limit; ++at) {
            int object = at < k ? source_object(spec, x[at]) : target_object(spec, x[k - 1]);
            int s = outer * sign_of_parity(degree_sum(spec, x, at, k));
            for (const auto* t : curvature)
                if (source_object(spec, t->output) == object)
                    entry(c, {c.kind, c.object, splice(x, at, at, t->output)}, t->coeff * s);
        }
        if (c.kind == HhKind::Check) {
            if (k > 1) {
                entry(c, {HhKind::Hat, c.object, x}, Q(1));
                std::vector<Morphism> r(x.begin() + 1, x.end());
                r.push_back(x[0]);
                int s = sign_of_parity(static_cast<long long>(shifted_degree(spec, x[0])) * degree_sum(spec, x, 1, k));
                entry(c, {HhKind::Hat, target_object(spec, x[0]), r}, Q(-s));
            }
            continue;
        }
        // Blocks through the last factor, wrapping onto `head` leading factors.
        for (std::size_t tail = 1; tail <= k; ++tail)
            for (std::size_t head = 0; head + tail <= k; ++head) {
                std::vector<Morphism> block(x.end() - static_cast<long>(tail), x.end());
                block.insert(block.end(), x.begin(), x.begin() + static_cast<long>(head));
                auto it = by_inputs.find(block);
                if (it == by_inputs.end())
                    continue;
                long long h = degree_sum(spec, x, 0, head);
                long long rest = degree_sum(spec, x, head, k);
                int s = -dual_sign(spec, block) * sign_of_parity(h * rest);
                std::vector<Morphism> middle(x.begin() + static_cast<long>(head), x.end() - static_cast<long>(tail));
                for (const auto* t : it->second) {
                    std::vector<Morphism> r = middle;
                    r.push_back(t->output);
                    int object = source_object(spec, r.front());
                    entry(c, {HhKind::Hat, object, r}, t->coeff * s);
                }
            }
    }

    int lo = 0, hi = 0;
    for (const auto& c : cells) {
        lo = std::min(lo, hh_degree(spec, c));
        hi = std::max(hi, hh_degree(spec, c));
    }
    GradedChainComplex out = b.finish("HH", lo, hi);
    out.complete = true;
    out.dropped_terms = dropped;
    return out;
}

GradedChainComplex lefschetz_ho_complex(const CurvedAinf& cat)
{
    ChordBasis b = chord_basis(cat.spec, cat.N);
    Dga dga = dualize_tensor_algebra(cat);
    Window w;
    w.weights = b.weights;
    w.max_weight = cat.N;
    GuardVerdict v = finiteness_guard(dga.alphabet, w);
    int top = 0;
    for (const auto& g : dga.alphabet.generators())
        top = std::max(top, std::abs(g.grading));
    int reach = v.max_len * top + 2;
    w.min_deg = -reach;
    w.max_deg = reach;
    GradedChainComplex c = build_ho_complex(dga, w);
    c.complete = true;
    return c;
}

DictionaryReport verify_dictionary(const CurvedAinf& cat, const GradedChainComplex& hh, const GradedChainComplex& ho)
{
    const AinfSpec& spec = cat.spec;
    ChordBasis b = chord_basis(spec, cat.N);
    const Alphabet& alpha = b.dga.alphabet;
    DictionaryReport r;
    auto fail = [&](std::string msg) {
        if (r.ok)
            r.detail = std::move(msg);
        r.ok = false;
    };

    // HH label -> (Ho degree, Ho label).
    std::map<std::string, std::string> to_ho;
    std::map<int, std::size_t> count;
    for (const auto& c : hh_cells(cat)) {
        Letters w;
        for (auto it = c.x.rbegin(); it != c.x.rend(); ++it)
            w.push_back(b.chord.at(*it));
        std::string label = c.kind == HhKind::Unit    ? tau_label(c.object)
                            : c.kind == HhKind::Check ? check_label(alpha, w)
                                                      : hat_label(alpha, w);
        to_ho[hh_label(spec, c)] = label;
        ++count[hh_degree(spec, c)];
    }

    std::set<int> degrees;
    for (const auto& [d, basis] : hh.basis)
        if (!basis.empty())
            degrees.insert(d);
    for (const auto& [d, basis] : ho.basis)
        if (!basis.empty())
            degrees.insert(-d);
    auto index = [](const std::vector<std::string>& labels) {
        std::unordered_map<std::string, int> m;
        for (std::size_t i = 0; i < labels.size(); ++i)
            m.emplace(labels[i], static_cast<int>(i));
        return m;
    };
    // Ho index of the partner of each Hochschild cell, per Hochschild degree.
    std::map<int, std::vector<int>> partner;
    for (int d : degrees) {
        if (hh.dim(d) != ho.dim(-d)) {
            fail("degree " + std::to_string(d) + ": " + std::to_string(hh.dim(d)) + " Hochschild cells against " +
                 std::to_string(ho.dim(-d)) + " Ho cells");
            continue;
        }
        auto ho_index = index(ho.basis_at(-d));
        auto& p = partner[d];
        for (const auto& l : hh.basis_at(d)) {
            auto it = to_ho.find(l);
            auto jt = it == to_ho.end() ? ho_index.end() : ho_index.find(it->second);
            if (jt == ho_index.end()) {
                fail("cell " + l + " has no partner in degree " + std::to_string(-d));
                p.push_back(-1);
            } else {
                p.push_back(jt->second);
            }
        }
    }
    if (!r.ok)
        return r;

    // delta(src) contains a dst exactly when d_Ho(partner(dst)) contains partner(src), with the
    // same coefficient.
    for (int d : degrees) {
        if (!degrees.count(d - 1))
            continue;
        SparseMatrix delta = hh.boundary_at(d);
        SparseMatrix dho = ho.boundary_at(-d + 1);
        const auto& src = hh.basis_at(d);
        std::map<std::pair<int, int>, Q> want;  // (ho row in -d, ho column in -d+1)
        for (std::size_t col = 0; col < src.size(); ++col)
            for (const auto& [row, v] : delta.columns[col])
                want[{partner[d][col], partner[d - 1][static_cast<std::size_t>(row)]}] = v;
        std::map<std::pair<int, int>, Q> got;
        for (int hcol = 0; hcol < dho.cols; ++hcol)
            for (const auto& [hrow, v] : dho.columns[static_cast<std::size_t>(hcol)])
                got[{hrow, hcol}] = v;
        if (want == got)
            continue;
        for (auto wi = want.begin(), gi = got.begin(); wi != want.end() || gi != got.end();) {
            std::pair<int, int> key;
            if (gi == got.end() || (wi != want.end() && wi->first < gi->first))
                key = wi->first;
            else
                key = gi->first;
            Q a = want.count(key) ? want.at(key) : Q(0);
            Q e = got.count(key) ? got.at(key) : Q(0);
            if (a != e) {
                const std::string& row = ho.basis_at(-d)[static_cast<std::size_t>(key.first)];
                const std::string& col = ho.basis_at(-d + 1)[static_cast<std::size_t>(key.second)];
                fail("coefficient of " + row + " in d(" + col + ") is " + to_string(e) +
                     ", the Hochschild differential gives " + to_string(a));
                return r;
            }
            if (wi != want.end() && wi->first == key)
                ++wi;
            if (gi != got.end() && gi->first == key)
                ++gi;
        }
    }
    return r;
}

AinfSpec minimal_lefschetz_spec(int n)
{
    AinfSpec s;
    s.k = 2;
    s.n = n;
    s.points.push_back({"a", 0, 1, 0});
    s.order = {"a"};
    return s;
}

}  // namespace lsh
