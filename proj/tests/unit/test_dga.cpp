#include "lsh/complexes.hpp"
#include "lsh/corpus.hpp"
#include "lsh/dga.hpp"
#include "lsh/error.hpp"

#include "../oracles.hpp"

#include <doctest.h>

#include <set>

using namespace lsh;

TEST_CASE("bundled DGAs satisfy d^2 = 0")
{
    for (int n = 2; n <= 6; ++n)
        CHECK(check_d_squared(corpus::unknot(n)).ok());
    CHECK(check_d_squared(corpus::chekanov_a()).ok());
    CHECK(check_d_squared(corpus::chekanov_c()).ok());
    CHECK(check_d_squared(corpus::dc1_vanishing()).ok());
    CHECK(check_d_squared(corpus::lambda_t(3)).ok());
}

TEST_CASE("d^2 failures name the generator")
{
    Dga dga(1, 3);
    uint32_t y = dga.add_generator({"y", 1, 0, 0});
    uint32_t x = dga.add_generator({"x", 2, 0, 0});
    dga.set_differential(y, Element::unit(0));
    dga.set_differential(x, Element::of(Word::of({y})));
    DgaReport r = check_d_squared(dga);
    REQUIRE_FALSE(r.ok());
    CHECK(r.issues.front().generator == "x");
    CHECK(r.issues.front().kind == "d_squared");
}

TEST_CASE("endpoints are enforced on entry and gradings by the checker")
{
    Dga dga(2, 3);
    uint32_t x = dga.add_generator({"x", 2, 0, 1});
    uint32_t y = dga.add_generator({"y", 1, 0, 0});
    dga.set_differential(x, {});
    CHECK_THROWS_AS(dga.set_differential(x, Element::of(Word::of({y}))), InputError);
    dga.set_differential(y, Element::of(Word::of({y})));
    DgaReport r = check_d_squared(dga);
    REQUIRE_FALSE(r.ok());
    CHECK(r.issues.front().generator == "y");
    CHECK(r.issues.front().kind == "grading");
}

TEST_CASE("Chekanov augmentations agree with a brute-force count")
{
    Dga dga = corpus::chekanov_a();
    const std::vector<Q> values{Q(-1), Q(0), Q(1)};
    std::vector<uint32_t> zero_graded;
    for (uint32_t id = 0; id < dga.alphabet.size(); ++id)
        if (dga.alphabet[id].grading == 0)
            zero_graded.push_back(id);

    // Evaluate eps(d c) for every grading-1 chord by hand.
    std::set<std::vector<Q>> brute;
    std::size_t combos = 1;
    for (std::size_t i = 0; i < zero_graded.size(); ++i)
        combos *= values.size();
    for (std::size_t code = 0; code < combos; ++code) {
        std::vector<Q> eps(dga.alphabet.size());
        std::size_t rest = code;
        for (uint32_t id : zero_graded) {
            eps[id] = values[rest % values.size()];
            rest /= values.size();
        }
        bool ok = true;
        for (uint32_t id = 0; id < dga.alphabet.size() && ok; ++id) {
            if (dga.alphabet[id].grading != 1)
                continue;
            Q total = 0;
            for (const auto& [w, c] : dga.differential(id).terms()) {
                Q term = c;
                for (uint32_t l : w.letters)
                    term *= eps[l];
                total += term;
            }
            ok = total == 0;
        }
        if (ok)
            brute.insert(eps);
    }
    auto found = enumerate_augmentations(dga, values);
    std::set<std::vector<Q>> got;
    for (const auto& a : found)
        got.insert(a.value);
    CHECK(got == brute);
    CHECK(got.size() == 1);
}

TEST_CASE("linearized homology of the Chekanov DGA")
{
    Dga dga = corpus::chekanov_a();
    auto augs = enumerate_augmentations(dga, {Q(-1), Q(0), Q(1)});
    REQUIRE(augs.size() == 1);
    GradedChainComplex c = linearize(dga, augs.front());
    CHECK(c.complete);
    std::map<int, long long> ranks;
    for (int d = -3; d <= 3; ++d)
        ranks[d] = oracle::homology_rank(c, d);
    CHECK(ranks == std::map<int, long long>{{-3, 0}, {-2, 1}, {-1, 0}, {0, 0}, {1, 1}, {2, 1}, {3, 0}});
    CHECK_THROWS_AS(linearize(dga, Augmentation{std::vector<Q>(dga.alphabet.size())}), InputError);
}

TEST_CASE("phi is a chain map and a corrupted phi is caught")
{
    DgaMorphism phi = corpus::chekanov_phi();
    CHECK(check_morphism(phi).ok);
    DgaMorphism bad = phi;
    bad.image[phi.source->alphabet.id("a_8")] = Element::unit(0);
    MorphismReport r = check_morphism(bad);
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.generator.empty());
    CHECK_FALSE(r.defect.is_zero());
}

TEST_CASE("composition with the identity")
{
    DgaMorphism phi = corpus::chekanov_phi();
    DgaMorphism id = identity_morphism(phi.target);
    DgaMorphism both = compose(id, phi);
    for (std::size_t i = 0; i < phi.image.size(); ++i)
        CHECK(both.image[i] == phi.image[i]);
}

TEST_CASE("adjoining q checks the grading of the deformation")
{
    Dga u = corpus::unknot(3);
    CHECK_THROWS_AS(adjoin_q(u, std::nullopt), InputError);
    QDeformation point;
    point.q_grading = q_grading_for_cycle(3, 0);
    point.terms.push_back({0, Element::of(Word::of({1}))});
    Dga deformed = adjoin_q(u, point);
    CHECK(deformed.alphabet.size() == 2);
    CHECK(deformed.alphabet[1].grading == 1);
    CHECK(check_d_squared(deformed).ok());
    QDeformation circle = point;
    circle.q_grading = q_grading_for_cycle(3, 1);
    CHECK_THROWS_AS(adjoin_q(u, circle), InputError);
}
