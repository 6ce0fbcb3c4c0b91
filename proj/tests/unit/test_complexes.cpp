#include "lsh/complexes.hpp"
#include "lsh/corpus.hpp"
#include "lsh/homology.hpp"

#include "../oracles.hpp"

#include <doctest.h>

using namespace lsh;

namespace {

Window window(int lo, int hi, int max_len = 0, bool truncate = false)
{
    Window w;
    w.min_deg = lo;
    w.max_deg = hi;
    w.max_len = max_len;
    w.allow_truncation = truncate;
    return w;
}

}  // namespace

TEST_CASE("unknot LH^Ho+ has no differential for n odd")
{
    for (int n : {3, 5}) {
        auto c = build_hoplus_complex(corpus::unknot(n), window(0, 12));
        for (const auto& [d, m] : c.boundary)
            CHECK(m.is_zero());
    }
}

TEST_CASE("unknot LH^Ho+ for n even: hat(a^2k) -> 2 chk(a^2k)")
{
    auto c = build_hoplus_complex(corpus::unknot(2), window(0, 8));
    auto image = c.image(5, "hat(a^4)");
    REQUIRE(image.size() == 1);
    CHECK(image[0].first == "chk(a^4)");
    CHECK(image[0].second == 2);
    CHECK(c.image(4, "hat(a^3)").empty());
}

TEST_CASE("tau carries no differential for the unknot")
{
    auto c = build_ho_complex(corpus::unknot(2), window(0, 6));
    CHECK(c.image(1, "chk(a)").empty());
    CHECK(c.index_of(0, "tau_1") == 0);
}

TEST_CASE("dc = 1 sends chk(c) to tau")
{
    auto c = build_ho_complex(corpus::dc1_vanishing(), window(0, 6));
    auto image = c.image(1, "chk(c)");
    REQUIRE(image.size() == 1);
    CHECK(image[0].first == "tau_1");
    for (int d = 0; d <= 6; ++d)
        CHECK(oracle::homology_rank(c, d) == 0);
}

TEST_CASE("M^cyc and LH^Ho agree on random DGAs")
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 25; ++trial) {
        Dga dga = oracle::random_dga(rng, 3, 3, 3);
        auto r = verify_en_isomorphism(dga, window(0, 5));
        CHECK(r.betti_equal);
    }
}

TEST_CASE("M^cyc labels translate to Ho labels")
{
    Dga u = corpus::unknot(3);
    CHECK(mcyc_to_ho_label(u.alphabet, "[x_1]") == "tau_1");
    auto m = build_module_Mcyc(u, window(0, 6));
    auto ho = build_ho_complex(u, window(0, 6));
    for (int d = 0; d <= 6; ++d)
        for (const auto& l : m.basis_at(d))
            CHECK(ho.index_of(d, mcyc_to_ho_label(u.alphabet, l)) >= 0);
}

TEST_CASE("cyclic image of a unit-valued word vanishes")
{
    DgaMorphism phi = corpus::chekanov_phi();
    uint32_t a7 = phi.source->alphabet.id("a_7");
    uint32_t a6 = phi.source->alphabet.id("a_6");
    CHECK(cyclic_image(phi, {a7}).empty());
    auto img = cyclic_image(phi, {a6});
    REQUIRE(img.size() == 1);
    CHECK(img.begin()->second == 1);
}

TEST_CASE("linear words over two components close up cyclically")
{
    Dga dga(2, 3);
    uint32_t x = dga.add_generator({"x", 1, 0, 1});
    uint32_t y = dga.add_generator({"y", 1, 1, 0});
    dga.set_differential(x, {});
    dga.set_differential(y, {});
    auto c = build_cyclic_complex(dga, window(0, 4));
    CHECK(c.basis_at(1).empty());
    CHECK(c.basis_at(2) == std::vector<std::string>{cyclic_label(dga.alphabet, {x, y})});
    auto ho = build_ho_complex(dga, window(0, 4));
    CHECK(ho.index_of(0, "tau_1") >= 0);
    CHECK(ho.index_of(0, "tau_2") >= 0);
}
