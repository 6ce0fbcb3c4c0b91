#pragma once

#include "lsh/chain_complex.hpp"
#include "lsh/dga.hpp"
#include "lsh/homology.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lsh {

// A transverse intersection point of the vanishing spheres L_lo and L_hi, lo < hi.
struct IntersectionPoint {
    std::string name;
    int lo = 0;
    int hi = 1;
    int grading = 0;  // grading of the shortest forward chord
};

enum class MorKind { Unit, Max, Fwd, Bwd };

// Basis morphism t^power x of the t-linear category. Unit and Max are indexed by object, Fwd and
// Bwd by intersection point. Fwd goes lo -> hi, Bwd goes hi -> lo.
struct Morphism {
    MorKind kind = MorKind::Unit;
    int index = 0;
    int power = 0;

    auto operator<=>(const Morphism&) const = default;
};

// mu^r(inputs) contains coeff * output. Inputs compose left to right.
struct AinfConstant {
    std::vector<Morphism> inputs;
    Morphism output;
    Q coeff = 1;
};

// Directed data of a Lefschetz fibration with spheres L_1..L_k. `constants` are the structure
// constants beyond units, curvature and Poincare duality, given at t^0 and extended t-linearly.
struct AinfSpec {
    int k = 2;
    int n = 3;
    std::vector<IntersectionPoint> points;
    std::vector<AinfConstant> constants;
    // Increasing order of intersection points; needed only for n = 2 to break ties inside one
    // pair L_i, L_j.
    std::vector<std::string> order;
};

void validate_spec(const AinfSpec& spec);

// Shifted degree of t^p x, which is also the grading of its chord.
int shifted_degree(const AinfSpec& spec, const Morphism& x);
int source_object(const AinfSpec& spec, const Morphism& x);
int target_object(const AinfSpec& spec, const Morphism& x);
int min_power(MorKind kind);  // 1 for Unit and Bwd and Max, 0 for Fwd
std::string morphism_label(const AinfSpec& spec, const Morphism& x);  // "a", "t a*", "t^2 e_1"
std::string chord_name(const AinfSpec& spec, const Morphism& x);      // "qf_a_0", "qm_1_2", ...

// The curved category truncated at t^N: every structure constant with all powers <= N.
struct CurvedAinf {
    AinfSpec spec;
    int N = 0;
    std::vector<AinfConstant> terms;  // inputs empty for curvature
    std::vector<std::string> unit_violations;
};

// Adds the curvature mu^0 = t e_i, strict unit relations, Poincare duality products and, for
// n = 2, the cubic Morse-Bott products. Supplied constants with a unit input are recorded as
// strict unitality violations.
CurvedAinf build_curved_category(const AinfSpec& spec, int N);

struct AinfIdentity {
    std::vector<Morphism> inputs;
    Morphism output;
    Q value;
};

struct AinfReport {
    std::vector<AinfIdentity> failures;  // nonzero coefficients of the curved A-infinity relations
    std::vector<std::string> unit_violations;
    bool ok() const { return failures.empty() && unit_violations.empty(); }
};

AinfReport check_curved_ainf(const CurvedAinf& cat);

// Chord alphabet of the category: generators in the order Unit, Max, Fwd, Bwd by index then power.
struct ChordBasis {
    Dga dga;
    std::map<Morphism, uint32_t> chord;
    std::vector<Morphism> morphism;  // indexed by generator id
    std::vector<int> weights;        // t-power of each chord
};

ChordBasis chord_basis(const AinfSpec& spec, int N);

// d(chord y) collects coeff * eps * chord(x_r)...chord(x_1) for each mu^r(x_1..x_r) containing
// y, with eps = (-1)^{sum_l (l-1)(|x_l|'+1)} over shifted degrees; mu^0 contributes units.
Dga dualize_tensor_algebra(const CurvedAinf& cat);

// d_h term as a series identity d q_y = coeff * q_{x_1}...q_{x_m}, expanded over all t-powers.
struct SeriesTerm {
    Morphism output;  // power ignored
    std::vector<Morphism> word;  // powers ignored
    Q coeff = 1;
};

// d_h read off the supplied constants: mu^r(x_1..x_r) = c y becomes d q_y = c eps q_{x_r}...q_{x_1}.
std::vector<SeriesTerm> dual_h_terms(const AinfSpec& spec);

// The Legendrian DGA of the link of vanishing spheres through T^N: d = d_const + d_MB + d_h with
// the Morse-Bott part written in generating series.
Dga lefschetz_dga(const AinfSpec& spec, const std::vector<SeriesTerm>& dh, int N);

// Hochschild complex of the truncated category: R in degree 0, e_i (x) x_1..x_k and the shifted
// copy of x_1..x_k over cyclic tensor words of total power <= N, in degrees negative to the
// corresponding word complex. Labels "e_1", "e_1|x_1|...|x_k", "[1]|x_1|...|x_k".
GradedChainComplex hochschild_complex(const CurvedAinf& cat);

// LH^Ho of the dualized algebra over words of total power <= N, all degrees.
GradedChainComplex lefschetz_ho_complex(const CurvedAinf& cat);

struct DictionaryReport {
    bool ok = true;
    std::string detail;
};

// Checks that the Hochschild differential is the transpose of the Ho differential under
// e_i <-> tau_i, e_i x_1..x_k <-> chk(c_k...c_1), x_1..x_k <-> hat(c_k...c_1), c_l = chord(x_l).
DictionaryReport verify_dictionary(const CurvedAinf& cat, const GradedChainComplex& hh,
                                   const GradedChainComplex& ho);

// The minimal example: two spheres meeting once in a point "a" of grading 0.
AinfSpec minimal_lefschetz_spec(int n = 3);

}  // namespace lsh
