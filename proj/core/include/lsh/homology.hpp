#pragma once

#include "lsh/algebra.hpp"
#include "lsh/chain_complex.hpp"

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace lsh {

// Degree window [min_deg, max_deg] of a word complex. Bases are enumerated one degree past
// each end so that the interior sees both adjacent differentials.
struct Window {
    int min_deg = 0;
    int max_deg = 0;
    int max_len = 0;  // 0 selects the smallest length the guard accepts, when one exists
    bool allow_truncation = false;
    // Optional letter weights: only words of total weight <= max_weight are enumerated. Weight-0
    // letters must not close a cycle, which bounds the word length.
    std::vector<int> weights;
    int max_weight = -1;
};

struct GuardVerdict {
    Guard guard = Guard::Exact;
    int max_len = 0;  // effective word-length bound
    std::string reason;
};

// EXACT when every letter has grading >= 1 (or every letter <= -1) and max_len reaches the
// longest word of a degree in [min_deg-1, max_deg+1]. `shift` is the largest degree offset a
// decoration adds on top of the word grading. With a weight bound the verdict is EXACT for the
// weight-filtered subspace.
GuardVerdict finiteness_guard(const Alphabet& alpha, const Window& window, int shift = 1);

// Composable (or cyclically composable) words of length 1..max_len with grading in
// [grade_lo, grade_hi], in the total word order.
std::vector<Letters> enumerate_words(const Alphabet& alpha, bool cyclic, int max_len, long long grade_lo,
                                     long long grade_hi, const std::vector<int>* weights = nullptr,
                                     int max_weight = 0);

struct BettiTable {
    std::map<int, long long> rank;
    std::map<int, long long> dims;
    std::set<int> edge;
    Guard guard = Guard::Exact;
    bool complete = false;
    std::size_t dropped_terms = 0;

    long long at(int d) const;
    bool operator==(const BettiTable&) const = default;
};

// Rank over Q by sparse elimination with Markowitz pivoting.
long long matrix_rank(const SparseMatrix& m);

// Worker count for per-degree ranks: LSH_THREADS when set, else the hardware concurrency.
int default_threads();

// Throws MathError when d^2 != 0 anywhere in the stored boundaries.
BettiTable betti(const GradedChainComplex& c, int threads = 0);

// Necessary rank conditions for an exact triangle t2 -> t1 -> t3: Euler characteristic
// additivity over [lo, hi] and rank(t1_d) <= rank(t2_d) + rank(t3_d). Throws InputError when the
// range touches an edge-flagged degree of any table.
bool verify_les_ranks(const BettiTable& t1, const BettiTable& t2, const BettiTable& t3, int lo, int hi);

}  // namespace lsh
