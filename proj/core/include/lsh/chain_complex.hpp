#pragma once

#include "lsh/rational.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lsh {

enum class Guard { Exact, Truncated };

const char* guard_name(Guard g);

// Column-major sparse matrix; each column sorted by row with no zero entries.
struct SparseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, Q>>> columns;

    SparseMatrix() = default;
    SparseMatrix(int r, int c) : rows(r), cols(c), columns(static_cast<std::size_t>(c)) {}
    bool is_zero() const;
    Q at(int r, int c) const;
    std::size_t nonzeros() const;
};

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix transpose(const SparseMatrix& m);

// Degree-indexed bases with boundary maps of degree -1. Bases may extend one degree past the
// window on each side so that interior ranks see both adjacent differentials.
struct GradedChainComplex {
    std::string name;
    std::map<int, std::vector<std::string>> basis;
    std::map<int, SparseMatrix> boundary;  // boundary[d] : basis[d] -> basis[d-1]
    int window_min = 0;
    int window_max = -1;
    bool complete = false;  // every nonzero degree is present; no window edge effects
    int max_len = 0;
    Guard guard = Guard::Exact;
    std::size_t dropped_terms = 0;  // differential terms that fell outside the enumerated bases

    std::size_t dim(int d) const;
    const std::vector<std::string>& basis_at(int d) const;
    // Boundary out of degree d; a zero matrix of the right shape when absent.
    SparseMatrix boundary_at(int d) const;
    // Image of a basis element as (label, coefficient) pairs.
    std::vector<std::pair<std::string, Q>> image(int d, const std::string& label) const;
    int index_of(int d, const std::string& label) const;  // -1 when absent
};

struct DSquaredCheck {
    bool ok = true;
    int degree = 0;
    std::string detail;
};

// Verifies boundary[d-1] * boundary[d] = 0 for every stored pair.
DSquaredCheck check_d_squared(const GradedChainComplex& c);

// Label-keyed incremental assembly, used for block complexes.
class ComplexBuilder {
public:
    int add(int degree, const std::string& label);
    bool has(int degree, const std::string& label) const;
    // Adds coeff * dst to the boundary of src (dst lives in degree-1). Returns false when dst is
    // not in the basis.
    bool add_entry(int degree, const std::string& src, const std::string& dst, const Q& coeff);
    void add_complex(const GradedChainComplex& c);
    GradedChainComplex finish(std::string name, int window_min, int window_max) const;

private:
    struct Degree {
        std::vector<std::string> labels;
        std::unordered_map<std::string, int> index;
        std::vector<std::map<int, Q>> columns;
    };
    std::map<int, Degree> degrees_;
};

// Degree-0 map between complexes; blocks[d] sends source.basis[d] to target.basis[d].
struct ChainMap {
    std::map<int, SparseMatrix> blocks;

    SparseMatrix block_at(const GradedChainComplex& source, const GradedChainComplex& target, int d) const;
};

// Label-keyed assembly of a chain map. Throws InputError when a label is absent from either
// complex.
class ChainMapBuilder {
public:
    ChainMapBuilder(const GradedChainComplex& source, const GradedChainComplex& target);
    void add(int degree, const std::string& src, const std::string& dst, const Q& coeff);
    ChainMap finish() const;

private:
    const GradedChainComplex& source_;
    const GradedChainComplex& target_;
    std::map<int, std::vector<std::map<int, Q>>> columns_;
};

struct ChainMapReport {
    bool ok = true;
    std::vector<int> failing_degrees;
    std::size_t defect_entries = 0;  // nonzero entries of F d - d F
    std::string detail;
};

// Checks F_{d-1} d_d = d_d F_d for source degrees d in [lo, hi].
ChainMapReport verify_chain_map(const GradedChainComplex& source, const GradedChainComplex& target,
                                const ChainMap& f, int lo, int hi);

}  // namespace lsh
