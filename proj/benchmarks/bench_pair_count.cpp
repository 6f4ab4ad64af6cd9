#include <cstdint>

#include <benchmark/benchmark.h>

#include "ppclab/construction.hpp"
#include "ppclab/gap_stats.hpp"
#include "ppclab/generators.hpp"
#include "ppclab/pair_correlation.hpp"

namespace {

ppclab::ConstructionConfig bench_config() {
    return ppclab::ConstructionConfig::derive(ppclab::GapCountTarget::builtin_logn(17), 16);
}

void BM_pair_count_fast_f64(benchmark::State& state) {
    auto n = static_cast<std::uint64_t>(state.range(0));
    auto rec = ppclab::iid_uniform(n, 42);
    ppclab::Radius r{1.0, static_cast<double>(n)};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            ppclab::pair_count_fast(rec, n, r, ppclab::Predicate::NonStrict));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_pair_count_fast_f64)
    ->RangeMultiplier(4)
    ->Range(1 << 10, 1 << 16)
    ->Complexity(benchmark::oNLogN);

void BM_pair_count_fast_exact(benchmark::State& state) {
    auto n = static_cast<std::uint64_t>(state.range(0));
    auto rec = ppclab::construct_sequence(n, bench_config(), 1);
    ppclab::Radius r{1.0, static_cast<double>(n)};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            ppclab::pair_count_fast(rec, n, r, ppclab::Predicate::NonStrict));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_pair_count_fast_exact)
    ->RangeMultiplier(4)
    ->Range(1 << 10, 1 << 16)
    ->Complexity(benchmark::oNLogN);

void BM_pair_count_brute(benchmark::State& state) {
    auto n = static_cast<std::uint64_t>(state.range(0));
    auto rec = ppclab::iid_uniform(n, 42);
    ppclab::Radius r{1.0, static_cast<double>(n)};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            ppclab::pair_count_brute(rec, n, r, ppclab::Predicate::NonStrict));
}
BENCHMARK(BM_pair_count_brute)->RangeMultiplier(4)->Range(1 << 8, 1 << 12);

void BM_gap_profile_exact(benchmark::State& state) {
    auto n = static_cast<std::uint64_t>(state.range(0));
    auto rec = ppclab::construct_sequence(n, bench_config(), 1);
    for (auto _ : state) benchmark::DoNotOptimize(ppclab::gap_profile(rec, n, 0.0));
}
BENCHMARK(BM_gap_profile_exact)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_gap_profile_f64(benchmark::State& state) {
    auto n = static_cast<std::uint64_t>(state.range(0));
    auto rec = ppclab::iid_uniform(n, 42);
    for (auto _ : state) benchmark::DoNotOptimize(ppclab::gap_profile(rec, n, 1e-12));
}
BENCHMARK(BM_gap_profile_f64)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_construct_sequence(benchmark::State& state) {
    auto n = static_cast<std::uint64_t>(state.range(0));
    auto cfg = bench_config();
    for (auto _ : state)
        benchmark::DoNotOptimize(ppclab::construct_sequence(n, cfg, 1));
}
BENCHMARK(BM_construct_sequence)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

}  // namespace

BENCHMARK_MAIN();
