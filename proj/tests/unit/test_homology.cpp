#include "lsh/complexes.hpp"
#include "lsh/corpus.hpp"
#include "lsh/error.hpp"
#include "lsh/homology.hpp"
#include "lsh/surgery.hpp"

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

TEST_CASE("matrix_rank matches the reference elimination on random matrices")
{
    std::mt19937 rng(5);
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    for (int trial = 0; trial < 400; ++trial) {
        int rows = pick(0, 14), cols = pick(0, 14);
        SparseMatrix m(rows, cols);
        int density = pick(1, 4);
        for (int c = 0; c < cols; ++c)
            for (int r = 0; r < rows; ++r)
                if (pick(0, density) == 0) {
                    Q v(pick(-4, 4), pick(1, 3));
                    v.canonicalize();
                    if (v != 0)
                        m.columns[static_cast<std::size_t>(c)].push_back({r, v});
                }
        // Low-rank products exercise dependent columns.
        if (trial % 3 == 0 && rows > 0 && cols > 1)
            for (int c = 1; c < cols; c += 2)
                m.columns[static_cast<std::size_t>(c)] = m.columns[static_cast<std::size_t>(c - 1)];
        CHECK(matrix_rank(m) == oracle::reference_rank(m));
    }
}

TEST_CASE("finiteness guard verdicts")
{
    Dga u = corpus::unknot(3);
    GuardVerdict v = finiteness_guard(u.alphabet, window(0, 8));
    CHECK(v.guard == Guard::Exact);
    CHECK(v.max_len == 9);
    CHECK(finiteness_guard(u.alphabet, window(0, 8, 4)).guard == Guard::Truncated);

    Dga mixed = corpus::chekanov_a();
    CHECK_THROWS_AS(finiteness_guard(mixed.alphabet, window(-2, 2)), InputError);
    CHECK(finiteness_guard(mixed.alphabet, window(-2, 2, 3)).guard == Guard::Truncated);

    Dga target = corpus::chekanov_target();
    CHECK(finiteness_guard(target.alphabet, window(-6, -1)).guard == Guard::Exact);

    Window w = window(0, 4);
    w.weights = {0};
    w.max_weight = 2;
    CHECK_THROWS_AS(finiteness_guard(u.alphabet, w), InputError);
}

TEST_CASE("a TRUNCATED window is refused unless allowed")
{
    Dga lt = corpus::lambda_t(3);
    CHECK_THROWS_AS(build_cyclic_complex(lt, window(0, 3, 2)), InputError);
    auto c = build_cyclic_complex(lt, window(0, 3, 2, true));
    CHECK(c.guard == Guard::Truncated);
    CHECK(betti(c).guard == Guard::Truncated);
}

TEST_CASE("Betti table of the unknot, n = 3")
{
    auto c = build_ho_complex(corpus::unknot(3), window(0, 8));
    BettiTable t = betti(c);
    for (int d = 0; d <= 8; ++d)
        CHECK(t.at(d) == (d == 1 ? 0 : 1));
    CHECK(t.edge.count(0));
    CHECK(t.edge.count(8));
    CHECK(t.guard == Guard::Exact);
}

TEST_CASE("betti runs the same with one worker and many")
{
    auto c = build_ho_complex(corpus::unknot(2), window(0, 10));
    CHECK(betti(c, 1) == betti(c, 4));
}

TEST_CASE("betti refuses a complex with d^2 != 0")
{
    GradedChainComplex c;
    c.name = "broken";
    c.basis[0] = {"x"};
    c.basis[1] = {"y"};
    c.basis[2] = {"z"};
    c.boundary[1] = SparseMatrix(1, 1);
    c.boundary[1].columns[0].push_back({0, Q(1)});
    c.boundary[2] = SparseMatrix(1, 1);
    c.boundary[2].columns[0].push_back({0, Q(1)});
    c.window_min = 0;
    c.window_max = 2;
    CHECK_THROWS_AS(betti(c), MathError);
}

TEST_CASE("CH(T*S^3) and CH(B^6) + LH^cyc satisfy the triangle rank conditions")
{
    FillingModel ball = builtin_ball_filling(3, 16);
    Dga u = corpus::unknot(3);
    BettiTable total = betti(build_lch_surgery(ball, u, {}, window(0, 12)));
    BettiTable ch = betti(build_ch_complex(ball, window(0, 12)));
    BettiTable cyc = betti(build_cyclic_complex(u, window(0, 12)));
    CHECK(verify_les_ranks(total, ch, cyc, 1, 11));
    CHECK_THROWS_AS(verify_les_ranks(total, ch, cyc, 0, 12), InputError);
}
