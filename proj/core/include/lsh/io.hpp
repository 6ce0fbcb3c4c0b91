#pragma once

#include "lsh/chain_complex.hpp"
#include "lsh/dga.hpp"
#include "lsh/homology.hpp"
#include "lsh/lefschetz.hpp"
#include "lsh/surgery.hpp"

#include <memory>
#include <string>

namespace lsh::io {

// Documents are JSON objects tagged by "format". Every coefficient is an exact rational string.
// Parse failures throw InputError; schema errors are collected and reported together, each with
// its line.

std::string read_file(const std::string& path);

Dga parse_dga(const std::string& text);
std::string emit_dga(const Dga& dga);
// Documents with "partial": true in their metadata carry gradings only; homology refuses them.
bool is_partial(const Dga& dga);

FillingModel parse_filling(const std::string& text);
std::string emit_filling(const FillingModel& f);

SurgeryCounts parse_counts(const std::string& text, const FillingModel& f, const Dga& dga);
std::string emit_counts(const SurgeryCounts& c, const FillingModel& f, const Dga& dga);

// `n_override` > 0 replaces a missing "n" and must agree with a present one.
AinfSpec parse_ainf(const std::string& text, int n_override = 0);
std::string emit_ainf(const AinfSpec& spec);

struct MorphismDocument {
    std::shared_ptr<const Dga> source;
    std::shared_ptr<const Dga> target;
    DgaMorphism map;
};

// Source and target DGA documents are embedded under "source" and "target".
MorphismDocument parse_morphism(const std::string& text);
std::string emit_morphism(const MorphismDocument& m);

Augmentation parse_augmentation(const std::string& text, const Dga& dga);
std::string emit_augmentation(const Augmentation& eps, const Dga& dga);

// Betti report: aligned table with a banner for TRUNCATED verdicts, and the same content as JSON.
std::string betti_text(const std::string& title, const GradedChainComplex& c, const BettiTable& t);
std::string betti_json(const std::string& title, const GradedChainComplex& c, const BettiTable& t);
BettiTable parse_betti_json(const std::string& text);

}  // namespace lsh::io
