#pragma once

#include "lsh/dga.hpp"
#include "lsh/lefschetz.hpp"
#include "lsh/surgery.hpp"

#include <string>
#include <vector>

namespace lsh::corpus {

// One chord a of grading n-1 with da = 0.
Dga unknot(int n);
// Nine chords on one component; signs chosen so that chekanov_phi is a chain map.
Dga chekanov_a();
// Gradings only; the differential is not recorded, so the document is partial.
Dga chekanov_c();
// Target Q<a_6> of chekanov_phi.
Dga chekanov_target();
DgaMorphism chekanov_phi();
// One chord c of grading 1 with dc = e_1.
Dga dc1_vanishing();
// Gradings of the Morse-Bott perturbed sphere with d b_k^min = e_1; other differentials unknown.
Dga lambda_t(int n);

struct Entry {
    std::string name;
    std::string kind;  // "dga", "morphism", "ainf", "filling"
    std::string summary;
};

std::vector<Entry> entries();
// Canonical document text; `n` selects the dimension of parametrized examples.
std::string emit(const std::string& name, int n);

}  // namespace lsh::corpus
