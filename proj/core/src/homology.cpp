#include "lsh/homology.hpp"

#include "lsh/error.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <set>
#include <thread>

namespace lsh {

GuardVerdict finiteness_guard(const Alphabet& alpha, const Window& window, int shift)
{
    GuardVerdict v;
    if (window.max_weight >= 0) {
        if (window.weights.size() != alpha.size())
            throw InputError("letter weights do not cover the alphabet");
        // Longest path of weight-0 letters, by relaxation over the component graph.
        int k = alpha.components();
        std::vector<int> longest(static_cast<std::size_t>(k), 0);
        for (int round = 0; round <= k; ++round) {
            bool changed = false;
            for (std::size_t c = 0; c < alpha.size(); ++c) {
                if (window.weights[c] < 0)
                    throw InputError("letter weights must be non-negative");
                if (window.weights[c] != 0)
                    continue;
                auto& to = longest[static_cast<std::size_t>(alpha[static_cast<uint32_t>(c)].dst)];
                int via = longest[static_cast<std::size_t>(alpha[static_cast<uint32_t>(c)].src)] + 1;
                if (via > to) {
                    to = via;
                    changed = true;
                }
            }
            if (!changed)
                break;
            if (round == k)
                throw InputError("weight-0 letters close a cycle; the weight bound does not bound word length");
        }
        int l0 = *std::max_element(longest.begin(), longest.end());
        v.max_len = (window.max_weight + 1) * l0 + window.max_weight;
        if (v.max_len == 0)
            v.max_len = 1;
        v.guard = Guard::Exact;
        v.reason = "total weight at most " + std::to_string(window.max_weight);
        return v;
    }
    bool positive = true, negative = true;
    for (const auto& g : alpha.generators()) {
        positive = positive && g.grading >= 1;
        negative = negative && g.grading <= -1;
    }
    int needed = 0;
    if (alpha.size() == 0)
        needed = 0;
    else if (positive)
        needed = std::max(1, window.max_deg + 1);
    else if (negative)
        needed = std::max(1, shift + 1 - window.min_deg);
    else
        needed = -1;

    if (needed >= 0) {
        v.max_len = window.max_len > 0 ? window.max_len : needed;
        if (v.max_len >= needed) {
            v.guard = Guard::Exact;
            v.reason = alpha.size() == 0 ? "no generators"
                                         : std::string("all gradings ") + (positive ? ">= 1" : "<= -1") +
                                               ", word length bound " + std::to_string(needed);
            return v;
        }
        v.guard = Guard::Truncated;
        v.reason = "max_len " + std::to_string(v.max_len) + " below the guard bound " + std::to_string(needed);
        return v;
    }
    if (window.max_len <= 0)
        throw InputError("generators of grading 0 or of mixed sign allow unbounded words; an explicit max_len is required");
    v.max_len = window.max_len;
    v.guard = Guard::Truncated;
    v.reason = "generators of grading 0 or of mixed sign; words cut at length " + std::to_string(v.max_len);
    return v;
}

std::vector<Letters> enumerate_words(const Alphabet& alpha, bool cyclic, int max_len, long long grade_lo,
                                     long long grade_hi, const std::vector<int>* weights, int max_weight)
{
    std::vector<Letters> out;
    if (alpha.size() == 0 || max_len <= 0)
        return out;
    long long gmin = alpha[0].grading, gmax = alpha[0].grading;
    for (const auto& g : alpha.generators()) {
        gmin = std::min<long long>(gmin, g.grading);
        gmax = std::max<long long>(gmax, g.grading);
    }
    // Extensions reachable from a partial word of grading g with r letters left.
    auto reachable = [&](long long g, int r) {
        long long lo = g + std::min(0LL, r * gmin);
        long long hi = g + std::max(0LL, r * gmax);
        return hi >= grade_lo && lo <= grade_hi;
    };
    Letters w;
    int weight = 0;
    std::function<void(long long)> grow = [&](long long g) {
        if (!w.empty() && g >= grade_lo && g <= grade_hi &&
            (!cyclic || alpha[w.back()].src == alpha[w.front()].dst))
            out.push_back(w);
        if (static_cast<int>(w.size()) == max_len)
            return;
        for (uint32_t c = 0; c < alpha.size(); ++c) {
            if (!w.empty() && alpha[w.back()].src != alpha[c].dst)
                continue;
            long long gc = g + alpha[c].grading;
            if (!reachable(gc, max_len - static_cast<int>(w.size()) - 1))
                continue;
            int wc = weights ? (*weights)[c] : 0;
            if (weights && weight + wc > max_weight)
                continue;
            weight += wc;
            w.push_back(c);
            grow(gc);
            w.pop_back();
            weight -= wc;
        }
    };
    grow(0);
    std::sort(out.begin(), out.end(), [](const Letters& a, const Letters& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

long long BettiTable::at(int d) const
{
    auto it = rank.find(d);
    return it == rank.end() ? 0 : it->second;
}

long long matrix_rank(const SparseMatrix& m)
{
    if (m.rows == 0 || m.cols == 0)
        return 0;
    // Rows as sorted (column, value) lists; col_rows[c] holds the live rows with an entry in c.
    using Row = std::vector<std::pair<int, Q>>;
    std::vector<Row> rows(static_cast<std::size_t>(m.rows));
    std::vector<std::set<int>> col_rows(static_cast<std::size_t>(m.cols));
    for (int c = 0; c < m.cols; ++c)
        for (const auto& [r, v] : m.columns[static_cast<std::size_t>(c)]) {
            rows[static_cast<std::size_t>(r)].emplace_back(c, v);
            col_rows[static_cast<std::size_t>(c)].insert(r);
        }
    std::vector<int> live;
    for (int r = 0; r < m.rows; ++r)
        if (!rows[static_cast<std::size_t>(r)].empty())
            live.push_back(r);

    long long rank = 0;
    Row merged;
    while (!live.empty()) {
        // Markowitz choice: shortest row, then its sparsest column.
        std::size_t best = 0;
        for (std::size_t i = 1; i < live.size(); ++i)
            if (rows[static_cast<std::size_t>(live[i])].size() < rows[static_cast<std::size_t>(live[best])].size())
                best = i;
        int pr = live[best];
        live[best] = live.back();
        live.pop_back();
        Row piv = std::move(rows[static_cast<std::size_t>(pr)]);
        std::size_t pk = 0;
        for (std::size_t k = 1; k < piv.size(); ++k)
            if (col_rows[static_cast<std::size_t>(piv[k].first)].size() <
                col_rows[static_cast<std::size_t>(piv[pk].first)].size())
                pk = k;
        int pc = piv[pk].first;
        Q pv = piv[pk].second;
        for (const auto& [c, v] : piv)
            col_rows[static_cast<std::size_t>(c)].erase(pr);
        ++rank;

        std::vector<int> targets(col_rows[static_cast<std::size_t>(pc)].begin(),
                                 col_rows[static_cast<std::size_t>(pc)].end());
        for (int r : targets) {
            Row& row = rows[static_cast<std::size_t>(r)];
            auto at = std::lower_bound(row.begin(), row.end(), pc,
                                       [](const std::pair<int, Q>& e, int c) { return e.first < c; });
            Q f = at->second / pv;
            merged.clear();
            std::size_t i = 0, j = 0;
            while (i < row.size() || j < piv.size()) {
                if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
                    merged.push_back(std::move(row[i++]));
                } else if (i == row.size() || piv[j].first < row[i].first) {
                    merged.emplace_back(piv[j].first, -f * piv[j].second);
                    col_rows[static_cast<std::size_t>(piv[j].first)].insert(r);
                    ++j;
                } else {
                    Q v = row[i].second - f * piv[j].second;
                    if (v == 0)
                        col_rows[static_cast<std::size_t>(piv[j].first)].erase(r);
                    else
                        merged.emplace_back(piv[j].first, std::move(v));
                    ++i;
                    ++j;
                }
            }
            row.swap(merged);
        }
        live.erase(std::remove_if(live.begin(), live.end(),
                                  [&](int r) { return rows[static_cast<std::size_t>(r)].empty(); }),
                   live.end());
    }
    return rank;
}

int default_threads()
{
    if (const char* env = std::getenv("LSH_THREADS")) {
        int n = std::atoi(env);
        if (n > 0)
            return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

BettiTable betti(const GradedChainComplex& c, int threads)
{
    DSquaredCheck sq = check_d_squared(c);
    if (!sq.ok)
        throw MathError("d^2 != 0 in " + c.name + " at degree " + std::to_string(sq.degree) + ": " + sq.detail);

    BettiTable t;
    t.guard = c.guard;
    t.complete = c.complete;
    t.dropped_terms = c.dropped_terms;
    if (c.window_max < c.window_min)
        return t;

    std::vector<int> degrees;
    for (int d = c.window_min; d <= c.window_max + 1; ++d)
        degrees.push_back(d);
    std::vector<long long> ranks(degrees.size(), 0);
    int workers = std::max(1, std::min<int>(threads > 0 ? threads : default_threads(), static_cast<int>(degrees.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next++) < degrees.size();)
            ranks[i] = matrix_rank(c.boundary_at(degrees[i]));
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; ++i)
            pool.emplace_back(work);
        for (auto& th : pool)
            th.join();
    }
    for (std::size_t i = 0; i + 1 < degrees.size(); ++i) {
        int d = degrees[i];
        long long dim = static_cast<long long>(c.dim(d));
        t.dims[d] = dim;
        t.rank[d] = dim - ranks[i] - ranks[i + 1];
    }
    if (!c.complete) {
        t.edge.insert(c.window_min);
        t.edge.insert(c.window_max);
    }
    return t;
}

bool verify_les_ranks(const BettiTable& t1, const BettiTable& t2, const BettiTable& t3, int lo, int hi)
{
    for (const BettiTable* t : {&t1, &t2, &t3})
        for (int e : t->edge)
            if (e >= lo && e <= hi)
                throw InputError("degree " + std::to_string(e) + " is edge-flagged; choose an interior range");
    long long chi = 0;
    for (int d = lo; d <= hi; ++d) {
        if (t1.at(d) > t2.at(d) + t3.at(d))
            return false;
        chi += sign_of_parity(d) * (t1.at(d) - t2.at(d) - t3.at(d));
    }
    return chi == 0;
}

}  // namespace lsh
