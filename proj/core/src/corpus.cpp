#include "lsh/corpus.hpp"

#include "lsh/error.hpp"
#include "lsh/io.hpp"

#include <nlohmann/json.hpp>

#include <memory>

namespace lsh::corpus {

namespace {

Element word(const Dga& dga, std::initializer_list<const char*> letters, const Q& c = 1)
{
    Letters w;
    for (const char* l : letters)
        w.push_back(dga.alphabet.id(l));
    return Element::of(Word::of(std::move(w)), c);
}

Element one(const Q& c = 1) { return Element::unit(0).scaled(c); }

std::string metadata(const nlohmann::json& j) { return j.dump(); }

}  // namespace

Dga unknot(int n)
{
    if (n < 2)
        throw InputError("the unknot example needs n >= 2");
    Dga d(1, n);
    d.add_generator({"a", n - 1, 0, 0});
    d.metadata = metadata({{"example", "unknot"}, {"note", "standard Legendrian unknot; one chord of grading n-1"}});
    return d;
}

Dga chekanov_a()
{
    Dga d(1, 2);
    for (int j = 1; j <= 9; ++j) {
        int g = j <= 4 ? 1 : j == 5 ? 2 : j == 6 ? -2 : 0;
        d.add_generator({"a_" + std::to_string(j), g, 0, 0});
    }
    Element d1 = one();
    d1 -= word(d, {"a_7"});
    d1 -= word(d, {"a_7", "a_6", "a_5"});
    Element d2 = one();
    d2 -= word(d, {"a_9"});
    d2 -= word(d, {"a_5", "a_6", "a_9"});
    Element d3 = one();
    d3 += word(d, {"a_8", "a_7"});
    Element d4 = one();
    d4 += word(d, {"a_8", "a_9"});
    d.set_differential(d.alphabet.id("a_1"), d1);
    d.set_differential(d.alphabet.id("a_2"), d2);
    d.set_differential(d.alphabet.id("a_3"), d3);
    d.set_differential(d.alphabet.id("a_4"), d4);
    d.metadata = metadata(
        {{"example", "chekanov_a"},
         {"sign_provenance",
          {{"status", "derived"},
           {"choice", "d a_1 = 1 - a_7 - a_7a_6a_5, d a_2 = 1 - a_9 - a_5a_6a_9, d a_3 = 1 + a_8a_7, d a_4 = 1 + a_8a_9"},
           {"constraints",
            {"the source differential is known only up to sign",
             "phi(a_6) = a_6, phi(a_7) = phi(a_9) = 1, phi(a_8) = -1, phi(a_j) = 0 for j < 6 is a chain map",
             "an augmentation with values in {-1, 0, 1} exists", "d^2 = 0"}}}}});
    return d;
}

Dga chekanov_c()
{
    Dga d(1, 2);
    for (int j = 1; j <= 9; ++j)
        d.add_generator({"c_" + std::to_string(j), j <= 4 ? 1 : 0, 0, 0});
    d.metadata = metadata({{"example", "chekanov_c"},
                           {"partial", true},
                           {"note", "gradings only; the differential is not recorded and homology commands refuse "
                                    "this document"}});
    return d;
}

Dga chekanov_target()
{
    Dga d(1, 2);
    d.add_generator({"a_6", -2, 0, 0});
    d.metadata = metadata({{"example", "chekanov_target"}});
    return d;
}

DgaMorphism chekanov_phi()
{
    auto src = std::make_shared<const Dga>(chekanov_a());
    auto dst = std::make_shared<const Dga>(chekanov_target());
    DgaMorphism f{src, dst, std::vector<Element>(src->alphabet.size())};
    f.image[src->alphabet.id("a_6")] = word(*dst, {"a_6"});
    f.image[src->alphabet.id("a_7")] = one();
    f.image[src->alphabet.id("a_9")] = one();
    f.image[src->alphabet.id("a_8")] = one(-1);
    return f;
}

Dga dc1_vanishing()
{
    Dga d(1, 2);
    uint32_t c = d.add_generator({"c", 1, 0, 0});
    d.set_differential(c, one());
    d.metadata = metadata({{"example", "dc1_vanishing"}});
    return d;
}

Dga lambda_t(int n)
{
    if (n < 3)
        throw InputError("the lambda_T example needs n >= 3");
    Dga d(1, n);
    d.add_generator({"a", n - 1, 0, 0});
    d.add_generator({"c_max", n - 1, 0, 0});
    d.add_generator({"b1_max", n - 1, 0, 0});
    d.add_generator({"b2_max", n, 0, 0});
    for (int j = 1; j <= 3; ++j)
        d.add_generator({"e" + std::to_string(j) + "_max", n - 2, 0, 0});
    d.add_generator({"c_min", 1, 0, 0});
    uint32_t b1 = d.add_generator({"b1_min", 1, 0, 0});
    uint32_t b2 = d.add_generator({"b2_min", 1, 0, 0});
    for (int j = 1; j <= 3; ++j)
        d.add_generator({"e" + std::to_string(j) + "_min", 0, 0, 0});
    d.set_differential(b1, one());
    d.set_differential(b2, one());
    d.metadata = metadata(
        {{"example", "lambda_T"},
         {"partial", true},
         {"note", "gradings as listed with |a| = n-1, including |b2_max| = |a| + 1; only d b1_min = d b2_min = 1 is "
                  "known, every other differential is unknown and recorded as zero"}});
    return d;
}

std::vector<Entry> entries()
{
    return {
        {"unknot", "dga", "Legendrian unknot, one chord a of grading n-1 (use --dim)"},
        {"chekanov_a", "dga", "Chekanov knot with nine chords and a chord of grading -2"},
        {"chekanov_c", "dga", "second Chekanov knot, gradings only (partial)"},
        {"chekanov_phi", "morphism", "chain map phi from chekanov_a onto Q<a_6>"},
        {"dc1_vanishing", "dga", "one chord c of grading 1 with dc = 1"},
        {"lambda_T", "dga", "Morse-Bott sphere with d b_k^min = 1, partial (use --dim, n >= 3)"},
        {"lefschetz_min", "ainf", "two spheres meeting in one point of grading 0 (use --dim, n >= 2)"},
        {"ball", "filling", "round ball filling with orbits up to grading 2n+12 (use --dim)"},
    };
}

std::string emit(const std::string& name, int n)
{
    if (name == "unknot")
        return io::emit_dga(unknot(n));
    if (name == "chekanov_a")
        return io::emit_dga(chekanov_a());
    if (name == "chekanov_c")
        return io::emit_dga(chekanov_c());
    if (name == "chekanov_phi") {
        DgaMorphism f = chekanov_phi();
        return io::emit_morphism(io::MorphismDocument{f.source, f.target, f});
    }
    if (name == "dc1_vanishing")
        return io::emit_dga(dc1_vanishing());
    if (name == "lambda_T")
        return io::emit_dga(lambda_t(n));
    if (name == "lefschetz_min")
        return io::emit_ainf(minimal_lefschetz_spec(n));
    if (name == "ball")
        return io::emit_filling(builtin_ball_filling(n, 2 * n + 12));
    throw InputError("unknown example \"" + name + "\"; see `lsh examples list`");
}

}  // namespace lsh::corpus
