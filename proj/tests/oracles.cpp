#include "oracles.hpp"

#include "lsh/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace oracle {

namespace {

// Echelon insertion: each row is reduced against the stored pivot rows, keyed by leading column.
long long rank_of(const lsh::SparseMatrix& m)
{
    std::vector<std::map<int, Q>> rows(static_cast<std::size_t>(m.rows));
    for (int c = 0; c < m.cols; ++c)
        for (const auto& [r, v] : m.columns[static_cast<std::size_t>(c)])
            rows[static_cast<std::size_t>(r)][c] = v;
    std::map<int, std::map<int, Q>> pivots;
    for (auto& row : rows) {
        while (!row.empty()) {
            auto lead = row.begin();
            auto it = pivots.find(lead->first);
            if (it == pivots.end()) {
                int col = lead->first;
                pivots.emplace(col, std::move(row));
                break;
            }
            Q f = lead->second / it->second.begin()->second;
            for (const auto& [c, v] : it->second) {
                Q& x = row[c];
                x -= f * v;
                if (x == 0)
                    row.erase(c);
            }
        }
    }
    return static_cast<long long>(pivots.size());
}

int sign(long long e) { return e % 2 == 0 ? 1 : -1; }

}  // namespace

long long reference_rank(const lsh::SparseMatrix& m) { return rank_of(m); }

bool boundary_squares_to_zero(const lsh::GradedChainComplex& c, std::string* where)
{
    for (const auto& [d, outer] : c.boundary) {
        auto it = c.boundary.find(d + 1);
        if (it == c.boundary.end())
            continue;
        const auto& inner = it->second;
        for (int j = 0; j < inner.cols; ++j) {
            std::map<int, Q> col;
            for (const auto& [k, v] : inner.columns[static_cast<std::size_t>(j)])
                for (const auto& [i, w] : outer.columns[static_cast<std::size_t>(k)])
                    col[i] += v * w;
            for (const auto& [i, v] : col)
                if (v != 0) {
                    if (where)
                        *where = c.name + " degree " + std::to_string(d + 1) + " column " + c.basis_at(d + 1)[static_cast<std::size_t>(j)] +
                                 " row " + c.basis_at(d - 1)[static_cast<std::size_t>(i)];
                    return false;
                }
        }
    }
    return true;
}

lsh::Element leibniz_d(const lsh::Dga& dga, const lsh::Element& x)
{
    lsh::Element out;
    for (const auto& [w, c] : x.terms()) {
        long long before = 0;
        for (std::size_t i = 0; i < w.letters.size(); ++i) {
            uint32_t letter = w.letters[i];
            for (const auto& [u, a] : dga.differential(letter).terms()) {
                lsh::Letters v(w.letters.begin(), w.letters.begin() + static_cast<long>(i));
                v.insert(v.end(), u.letters.begin(), u.letters.end());
                v.insert(v.end(), w.letters.begin() + static_cast<long>(i) + 1, w.letters.end());
                lsh::Word term = v.empty() ? lsh::Word::idempotent(u.unit) : lsh::Word::of(v);
                out.add(term, c * a * sign(before));
            }
            before += dga.alphabet[letter].grading;
        }
    }
    return out;
}

long long homology_rank(const lsh::GradedChainComplex& c, int d)
{
    return static_cast<long long>(c.dim(d)) - reference_rank(c.boundary_at(d)) - reference_rank(c.boundary_at(d + 1));
}

long long persistent_rank(const lsh::GradedChainComplex& small, const lsh::GradedChainComplex& big, int d)
{
    long long cycles = static_cast<long long>(small.dim(d)) - reference_rank(small.boundary_at(d));
    // Boundaries of `big` lying inside `small`: rank B minus the rank of B's rows outside `small`.
    lsh::SparseMatrix b = big.boundary_at(d + 1);
    const auto& labels = big.basis_at(d);
    std::vector<int> outside(labels.size(), -1);
    int extra = 0;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (small.index_of(d, labels[i]) < 0)
            outside[i] = extra++;
    lsh::SparseMatrix p(extra, b.cols);
    for (int col = 0; col < b.cols; ++col)
        for (const auto& [r, v] : b.columns[static_cast<std::size_t>(col)])
            if (outside[static_cast<std::size_t>(r)] >= 0)
                p.columns[static_cast<std::size_t>(col)].push_back({outside[static_cast<std::size_t>(r)], v});
    return cycles - (reference_rank(b) - reference_rank(p));
}

lsh::Dga random_dga(std::mt19937& rng, int max_gens, int max_grading, int ambient_dim)
{
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    int k = pick(1, 2);
    int count = pick(1, max_gens);
    std::vector<lsh::Generator> gens;
    for (int i = 0; i < count; ++i)
        gens.push_back({"x" + std::to_string(i + 1), pick(1, max_grading), pick(0, k - 1), pick(0, k - 1)});
    std::stable_sort(gens.begin(), gens.end(), [](const auto& a, const auto& b) { return a.grading < b.grading; });

    lsh::Dga dga(k, ambient_dim);
    for (const auto& g : gens)
        dga.add_generator(g);
    for (uint32_t id = 0; id < dga.alphabet.size(); ++id)
        dga.set_differential(id, {});

    std::set<uint32_t> cycles;
    for (uint32_t id = 0; id < dga.alphabet.size(); ++id) {
        const auto& g = dga.alphabet[id];
        std::vector<lsh::Element> candidates;
        if (g.grading == 1 && g.src == g.dst)
            candidates.push_back(lsh::Element::unit(g.src));
        // Words of length <= 3 in earlier generators.
        std::vector<lsh::Letters> words{{}};
        for (int len = 0; len < 3; ++len) {
            std::vector<lsh::Letters> next;
            for (const auto& w : words)
                for (uint32_t x = 0; x < id; ++x) {
                    lsh::Letters v = w;
                    v.push_back(x);
                    if (lsh::is_composable(dga.alphabet, v))
                        next.push_back(v);
                }
            for (const auto& w : next) {
                long long deg = lsh::grading(dga.alphabet, w);
                bool all_cycles = std::all_of(w.begin(), w.end(), [&](uint32_t x) { return cycles.count(x) > 0; });
                if (deg == g.grading - 1 && all_cycles)
                    candidates.push_back(lsh::Element::of(lsh::Word::of(w)));
                if (deg == g.grading) {
                    lsh::Element b = lsh::d_word(dga, lsh::Word::of(w));
                    if (!b.is_zero())
                        candidates.push_back(b);
                }
            }
            words = std::move(next);
        }
        lsh::Element dc;
        for (const auto& cand : candidates) {
            int c = pick(-2, 2);
            if (c == 0 || pick(0, 2) == 0)
                continue;
            lsh::Dga trial = dga;
            lsh::Element next = dc;
            next += cand.scaled(Q(c));
            try {
                trial.set_differential(id, next);
            } catch (const lsh::InputError&) {
                continue;
            }
            dc = std::move(next);
        }
        dga.set_differential(id, dc);
        if (dc.is_zero())
            cycles.insert(id);
    }
    return dga;
}

int shifted(const lsh::AinfSpec& spec, const lsh::Morphism& x)
{
    using lsh::MorKind;
    int p = x.power;
    if (x.kind == MorKind::Unit)
        return -1 + 2 * p;
    if (x.kind == MorKind::Max)
        return spec.n - 2 + 2 * p;
    int g = spec.points[static_cast<std::size_t>(x.index)].grading;
    if (x.kind == MorKind::Fwd)
        return g + 2 * p;
    return spec.n - 3 - g + 2 * p;
}

std::vector<lsh::SeriesTerm> dual_h(const lsh::AinfSpec& spec)
{
    std::vector<lsh::SeriesTerm> out;
    for (const auto& c : spec.constants) {
        long long e = 0;
        for (std::size_t m = 0; m < c.inputs.size(); ++m)
            e += static_cast<long long>(m) * (shifted(spec, c.inputs[m]) + 1);
        lsh::SeriesTerm t;
        t.output = c.output;
        t.word.assign(c.inputs.rbegin(), c.inputs.rend());
        t.coeff = c.coeff * sign(e);
        out.push_back(t);
    }
    return out;
}

RandomSpec random_spec(std::mt19937& rng, int n, int N)
{
    using lsh::MorKind;
    using lsh::Morphism;
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    RandomSpec out;
    lsh::AinfSpec& s = out.spec;
    s.n = n;
    s.k = pick(2, 3);
    auto add_point = [&](int lo, int hi, int g) {
        int idx = static_cast<int>(s.points.size());
        s.points.push_back({"p" + std::to_string(idx + 1), lo, hi, g});
        s.order.push_back(s.points.back().name);
        return idx;
    };
    auto valid = [&](const lsh::AinfSpec& t) {
        return lsh::check_curved_ainf(lsh::build_curved_category(t, N)).ok();
    };
    // Keeps the first sign choice that satisfies every relation, or drops the family.
    auto try_family = [&](const std::vector<lsh::AinfConstant>& fixed, std::vector<lsh::AinfConstant> signed_part) {
        std::size_t m = signed_part.size();
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
            lsh::AinfSpec t = s;
            for (const auto& c : fixed)
                t.constants.push_back(c);
            for (std::size_t i = 0; i < m; ++i) {
                lsh::AinfConstant c = signed_part[i];
                c.coeff = (mask >> i) & 1u ? Q(-1) : Q(1);
                t.constants.push_back(c);
            }
            if (valid(t)) {
                s = t;
                ++out.constant_families;
                return;
            }
        }
    };

    if (s.k == 3 && pick(0, 3) > 0) {
        int ga = pick(-1, 1), gb = pick(-1, 1);
        int a = add_point(0, 1, ga), b = add_point(1, 2, gb), c = add_point(0, 2, ga + gb + 1);
        try_family({{{Morphism{MorKind::Fwd, a, 0}, Morphism{MorKind::Fwd, b, 0}}, Morphism{MorKind::Fwd, c, 0}, 1}},
                   {{{Morphism{MorKind::Fwd, b, 0}, Morphism{MorKind::Bwd, c, 0}}, Morphism{MorKind::Bwd, a, 0}, 1},
                    {{Morphism{MorKind::Bwd, c, 0}, Morphism{MorKind::Fwd, a, 0}}, Morphism{MorKind::Bwd, b, 0}, 1}});
    }
    if (pick(0, 2) > 0) {
        int lo = pick(0, s.k - 2);
        int hi = pick(lo + 1, s.k - 1);
        int g = pick(-1, 1);
        int a = add_point(lo, hi, g), b = add_point(lo, hi, g + 1);
        try_family({{{Morphism{MorKind::Fwd, a, 0}}, Morphism{MorKind::Fwd, b, 0}, 1}},
                   {{{Morphism{MorKind::Bwd, b, 0}}, Morphism{MorKind::Bwd, a, 0}, 1}});
    }
    for (int extra = pick(0, 1); extra > 0; --extra) {
        int lo = pick(0, s.k - 2);
        add_point(lo, pick(lo + 1, s.k - 1), pick(-1, 2));
    }
    if (s.points.empty())
        add_point(0, 1, pick(-1, 2));
    return out;
}

}  // namespace oracle
