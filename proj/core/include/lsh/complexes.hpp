#pragma once

#include "lsh/chain_complex.hpp"
#include "lsh/dga.hpp"
#include "lsh/homology.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace lsh {

struct CyclicWord {
    Letters rep;       // minimal rotation under (length, lexicographic)
    int sign = 1;      // input = sign * rep in the cyclic quotient
    int kappa = 1;     // largest k with rep = v^k
    bool is_zero = false;  // some rotation returns the word with sign -1
};

// Throws InputError when w is empty or not cyclically composable.
CyclicWord cyclic_class(const Alphabet& alpha, const Letters& w);

// A cyclic word with one marked letter; the hat copy raises the marked letter's grading by one.
struct DecoratedWord {
    Letters word;
    std::size_t mark = 0;
    bool hat = false;

    long long grading(const Alphabet& alpha) const;
};

// Rotates the mark to the front. Returns the linear word and the Koszul sign, computed with the
// hat grading for the marked letter.
std::pair<Letters, int> mark_to_front(const Alphabet& alpha, const DecoratedWord& w);

// S(c_1...c_l) = sum_j (-1)^{|c_1...c_{j-1}|} c_1...hat(c_j)...c_l; S(e_i) = 0.
std::vector<std::pair<DecoratedWord, int>> s_operator(const Alphabet& alpha, const Word& w);

// Basis labels shared by all word complexes.
std::string cyclic_label(const Alphabet& alpha, const Letters& rep);  // "(a^3)"
std::string check_label(const Alphabet& alpha, const Letters& w);     // "chk(a^3)", mark on the first letter
std::string hat_label(const Alphabet& alpha, const Letters& w);       // "hat(a^3)"
std::string tau_label(int component);                                 // "tau_1"

GradedChainComplex build_cyclic_complex(const Dga& dga, const Window& window);

// Image of the cyclic class (w) under a DGA map, keyed by canonical representative. Unit terms
// and bad classes vanish.
std::map<Letters, Q> cyclic_image(const DgaMorphism& f, const Letters& w);
GradedChainComplex build_hoplus_complex(const Dga& dga, const Window& window);

struct HoComplexSpec {
    const Dga* dga = nullptr;
    // Coefficient of tau_i in the differential of chk(c) for a chord c from i to i; replaces the
    // coefficient of e_i in d(c) when present.
    std::map<uint32_t, Q> unit_overrides;
};

GradedChainComplex build_ho_complex(const HoComplexSpec& spec, const Window& window);
inline GradedChainComplex build_ho_complex(const Dga& dga, const Window& window)
{
    return build_ho_complex(HoComplexSpec{&dga, {}}, window);
}

// M(L): words w1 u w2 with one module letter u in {x_i, hat(c)}. Labels "w1 [u] w2".
GradedChainComplex build_module_M(const Dga& dga, const Window& window);
// M^cyc: the graded cyclic quotient, written with u in front. Labels "[x_1]", "[x_1] a^2",
// "[^a] a^2".
GradedChainComplex build_module_Mcyc(const Dga& dga, const Window& window);

// Ho label of an M^cyc label under x_i <-> tau_i, x w <-> chk(w), hat(c) w' <-> hat(c w').
std::string mcyc_to_ho_label(const Alphabet& alpha, const std::string& label);

struct EnIsomorphismReport {
    bool betti_equal = false;
    BettiTable mcyc;
    BettiTable ho;
};

EnIsomorphismReport verify_en_isomorphism(const Dga& dga, const Window& window);

}  // namespace lsh
