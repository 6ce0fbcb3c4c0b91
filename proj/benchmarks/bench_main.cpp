#include "lsh/complexes.hpp"
#include "lsh/corpus.hpp"
#include "lsh/homology.hpp"
#include "lsh/lefschetz.hpp"

#include <benchmark/benchmark.h>

#include <map>
#include <random>

namespace {

// Banded random matrix with small integer entries; density about 4 per column.
lsh::SparseMatrix banded(int size, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coeff(-3, 3), offset(-8, 8);
    lsh::SparseMatrix m(size, size);
    for (int c = 0; c < size; ++c) {
        std::map<int, lsh::Q> col;
        for (int k = 0; k < 4; ++k) {
            int r = c + offset(rng);
            int v = coeff(rng);
            if (r >= 0 && r < size && v != 0)
                col[r] += v;
        }
        for (const auto& [r, v] : col)
            if (v != 0)
                m.columns[static_cast<std::size_t>(c)].push_back({r, v});
    }
    return m;
}

void BM_MatrixRank(benchmark::State& state)
{
    lsh::SparseMatrix m = banded(static_cast<int>(state.range(0)), 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(lsh::matrix_rank(m));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MatrixRank)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_HoComplexUnknot(benchmark::State& state)
{
    lsh::Dga dga = lsh::corpus::unknot(3);
    lsh::Window w;
    w.min_deg = 0;
    w.max_deg = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto c = lsh::build_ho_complex(dga, w);
        benchmark::DoNotOptimize(lsh::betti(c, 1));
    }
}
BENCHMARK(BM_HoComplexUnknot)->Arg(12)->Arg(24)->Arg(48);

void BM_CyclicChekanov(benchmark::State& state)
{
    lsh::Dga dga = lsh::corpus::chekanov_a();
    lsh::Window w;
    w.min_deg = -2;
    w.max_deg = 2;
    w.weights.assign(dga.alphabet.size(), 1);
    for (const char* g : {"a_1", "a_2"})
        w.weights[dga.alphabet.id(g)] = 3;
    for (const char* g : {"a_3", "a_4"})
        w.weights[dga.alphabet.id(g)] = 2;
    w.max_weight = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto c = lsh::build_cyclic_complex(dga, w);
        benchmark::DoNotOptimize(lsh::betti(c, 1));
    }
}
BENCHMARK(BM_CyclicChekanov)->DenseRange(3, 5);

void BM_LefschetzDictionary(benchmark::State& state)
{
    lsh::CurvedAinf cat = lsh::build_curved_category(lsh::minimal_lefschetz_spec(3), static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto hh = lsh::hochschild_complex(cat);
        auto ho = lsh::lefschetz_ho_complex(cat);
        benchmark::DoNotOptimize(lsh::verify_dictionary(cat, hh, ho).ok);
    }
}
BENCHMARK(BM_LefschetzDictionary)->DenseRange(1, 3);

}  // namespace

BENCHMARK_MAIN();
