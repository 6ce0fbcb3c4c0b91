#pragma once

#include "lsh/chain_complex.hpp"
#include "lsh/complexes.hpp"
#include "lsh/dga.hpp"
#include "lsh/homology.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace lsh {

struct Orbit {
    std::string label;
    int grading = 0;
    int kappa = 1;
    bool good = true;
};

struct MorseGenerator {
    std::string label;
    int grading = 0;  // n - Morse index
};

using CountKey = std::pair<int, int>;  // (source index, target index)

// Orbit and Morse data of a filling with its count tables; indices refer to `orbits` and `morse`.
struct FillingModel {
    int n = 0;
    std::vector<Orbit> orbits;
    std::map<CountKey, Q> ch_counts;     // n_{gamma beta}, |beta| = |gamma| - 1
    std::map<CountKey, Q> delta_counts;  // m_{gamma beta}, check gamma -> hat beta, |beta| = |gamma| - 2
    std::vector<MorseGenerator> morse;
    std::map<CountKey, Q> morse_diff;    // p -> p', |p'| = |p| - 1
    std::map<CountKey, Q> theta_counts;  // l_{gamma p}, |gamma| - |p| = 1

    int orbit_index(const std::string& label) const;  // -1 when absent
    int morse_index(const std::string& label) const;
};

// Throws InputError on a count that violates its grading constraint or a bad index.
void validate_filling(const FillingModel& f);

// Orbits gamma^k with |gamma^k| = n-1+2k up to max_grading, kappa = k, all good; the check of
// gamma^{k+1} hits the hat of gamma^k; one Morse generator p of grading n with l_{gamma^1 p} = 1.
FillingModel builtin_ball_filling(int n, int max_grading);

// A word-indexed count on the Legendrian side.
struct WordCount {
    int orbit = 0;
    Letters word;
    Q coeff;
};

struct SurgeryCounts {
    std::vector<WordCount> mixed;        // n_{gamma (w)}, |gamma| - |w| = 1
    std::vector<WordCount> check;        // check counts into chk(w), |gamma| - |w| = 1
    std::vector<WordCount> hat;          // hat counts into hat(w), |gamma| - |w| = 2
    std::map<CountKey, Q> tau;           // (orbit, component) -> n_{gamma j}, |gamma| = 1
    std::map<CountKey, Q> morse_tau;     // (morse, component) -> coefficient, |p| = 1
};

// Throws InputError on a count violating its grading constraint or naming a non-cyclic word.
void validate_counts(const FillingModel& f, const Dga& dga, const SurgeryCounts& c);

enum class KappaConvention { DivideByTarget, DivideBySource };

std::string orbit_label(const Orbit& o);        // "<g^1>"
std::string orbit_check_label(const Orbit& o);  // "<g^1>chk"
std::string orbit_hat_label(const Orbit& o);    // "<g^1>hat"
std::string morse_label(const MorseGenerator& p);  // "<p>"

GradedChainComplex build_ch_complex(const FillingModel& f, const Window& window,
                                    KappaConvention conv = KappaConvention::DivideByTarget);
GradedChainComplex build_shplus_complex(const FillingModel& f, const Window& window);
GradedChainComplex build_sh_complex(const FillingModel& f, const Window& window);

GradedChainComplex build_lch_surgery(const FillingModel& f, const Dga& dga, const SurgeryCounts& c, const Window& window);
GradedChainComplex build_shplus_surgery(const FillingModel& f, const Dga& dga, const SurgeryCounts& c,
                                        const Window& window);
GradedChainComplex build_sh_surgery(const FillingModel& f, const Dga& dga, const SurgeryCounts& c,
                                    const Window& window, const HoComplexSpec* ho = nullptr);

// Counts of a cobordism W from the filling X to the filling X_0.
struct CobordismCounts {
    std::map<CountKey, Q> n;  // |beta| = |gamma|
    std::map<CountKey, Q> m;  // check gamma -> hat beta, |beta| = |gamma| - 1
    std::map<CountKey, Q> l;  // check gamma -> p in X_0, |p| = |gamma|
};

struct CobordismMap {
    GradedChainComplex source;
    GradedChainComplex target;
    ChainMap map;
    ChainMapReport report;
};

enum class Theory { CH, SHPlus, SH };

// F_CH divides by kappa(beta); F on hats divides by kappa(gamma); Morse generators project by label.
CobordismMap assemble_cobordism_map(const CobordismCounts& counts, const FillingModel& source,
                                    const FillingModel& target, Theory theory, const Window& window);

// gamma -> kappa(gamma) gamma from the divide-by-target convention to the divide-by-source one.
CobordismMap kappa_rescaling(const FillingModel& f, const Window& window);

}  // namespace lsh
