#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "qam/homogeneity.hpp"
#include "qam/qgates.hpp"

namespace {

// Random dataset with m exemplars over n binary-ish variables.
qam::Dataset random_dataset(std::size_t m, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> symbol(0, 2), outcome(0, 2);
    std::string text;
    for (std::size_t j = 0; j < m; ++j) {
        text += std::string(1, static_cast<char>('x' + outcome(rng))) + '\t';
        for (std::size_t i = 0; i < n; ++i) {
            if (i) text += ' ';
            text += static_cast<char>('a' + symbol(rng));
        }
        text += '\n';
    }
    return qam::parse_dataset(text);
}

qam::FeatureVector all_a(std::size_t n) {
    std::string text;
    for (std::size_t i = 0; i < n; ++i) text += i ? " a" : "a";
    return qam::FeatureVector::parse(text);
}

void BM_FastEngine(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    const auto n = static_cast<std::size_t>(state.range(1));
    const qam::Dataset ds = random_dataset(m, n, 1);
    const qam::FeatureVector given = all_a(n);
    for (auto _ : state) benchmark::DoNotOptimize(qam::analogical_set(ds, given).total_pointers);
}
BENCHMARK(BM_FastEngine)->Args({6, 3})->Args({16, 6})->Args({64, 10})->Args({256, 14});

void BM_GateEngine(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    const auto n = static_cast<std::size_t>(state.range(1));
    const qam::Dataset ds = random_dataset(m, n, 1);
    const qam::FeatureVector given = all_a(n);
    for (auto _ : state) benchmark::DoNotOptimize(qam::run_qam_circuit(ds, given).supracontexts.size());
}
BENCHMARK(BM_GateEngine)->Args({6, 3})->Args({16, 6})->Args({32, 8});

}  // namespace

BENCHMARK_MAIN();
