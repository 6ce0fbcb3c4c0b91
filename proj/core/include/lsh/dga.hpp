#pragma once

#include "lsh/algebra.hpp"
#include "lsh/chain_complex.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lsh {

// A free path algebra over the idempotent ring with a differential on generators.
struct Dga {
    Alphabet alphabet;
    int n = 0;  // ambient sphere dimension parameter
    std::vector<Element> d;
    std::string metadata = "{}";  // canonical JSON object carried through documents

    explicit Dga(int components = 1, int ambient_dim = 0) : alphabet(components), n(ambient_dim) {}

    uint32_t add_generator(Generator g);
    // Each term must be a composable word from dst(c) back to src(c), or e_i when src = dst = i.
    void set_differential(uint32_t id, Element dc);
    const Element& differential(uint32_t id) const { return d.at(id); }
    int components() const { return alphabet.components(); }
};

// Graded Leibniz extension; units produced inside a word are absorbed.
Element d_word(const Dga& dga, const Word& w);
Element extend_leibniz(const Dga& dga, const Element& x);

struct DgaIssue {
    std::string generator;
    std::string kind;  // "grading" or "d_squared"
    std::string detail;
};

struct DgaReport {
    std::vector<DgaIssue> issues;
    bool ok() const { return issues.empty(); }
};

DgaReport check_d_squared(const Dga& dga);

struct DgaMorphism {
    std::shared_ptr<const Dga> source;
    std::shared_ptr<const Dga> target;
    std::vector<Element> image;  // indexed by source generator id
};

Element apply_morphism(const DgaMorphism& f, const Element& x);
DgaMorphism identity_morphism(std::shared_ptr<const Dga> dga);
DgaMorphism compose(const DgaMorphism& g, const DgaMorphism& f);  // g after f

struct MorphismReport {
    bool ok = true;
    std::string generator;  // first failing source generator
    Element defect;          // f(dc) - d(f(c)) in the target
};

// Throws InputError when an image is not homogeneous of the generator's grading.
MorphismReport check_morphism(const DgaMorphism& f);

struct Augmentation {
    std::vector<Q> value;  // indexed by generator id; zero off grading 0
};

Q augment(const Dga& dga, const Augmentation& eps, const Element& x);
bool is_augmentation(const Dga& dga, const Augmentation& eps);
std::vector<Augmentation> enumerate_augmentations(const Dga& dga, const std::vector<Q>& values);

// Linearized complex on the generators, d_eps(c) = linear part of the eps-conjugated differential.
GradedChainComplex linearize(const Dga& dga, const Augmentation& eps);

inline int q_grading_for_cycle(int n, int cycle_dim) { return n - cycle_dim - 2; }

struct QDeformation {
    int q_grading = 0;
    int component = 0;
    // Extra terms of d for old generators, written in the extended alphabet where q has id
    // dga.alphabet.size().
    std::vector<std::pair<uint32_t, Element>> terms;
};

// Adds a cycle q and the supplied deformation terms. Throws InputError on missing data or on a
// deformation term of the wrong grading or endpoints.
Dga adjoin_q(const Dga& dga, const std::optional<QDeformation>& deformation);

struct RelQResult {
    std::shared_ptr<const Dga> b;       // words ending in q, modulo q^2
    std::shared_ptr<const Dga> target;  // free on x_- w x_+ and a with da = x_- x_+
    DgaMorphism phi;
    bool truncated = false;             // some block exceeded max_word_len
};

RelQResult rel_q_construction(const Dga& dga_q, uint32_t q, int max_word_len);

}  // namespace lsh
