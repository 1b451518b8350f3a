#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include <parrondo/chains.hpp>
#include <parrondo/montecarlo.hpp>
#include <parrondo/region.hpp>
#include <parrondo/solver.hpp>
#include <parrondo/state.hpp>

namespace {

parrondo::game_params params_at(int n) { return {n, 1.0, 0.16, 0.7, 0.5}; }

// Dense strictly positive row-stochastic matrix, for timing the elimination
// alone without any chain structure to exploit.
parrondo::stoch_matrix random_dense(int dim, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> U(0.1, 1.0);
    parrondo::stoch_matrix P;
    P.dim = dim;
    P.rows.resize(std::size_t(dim));
    for (auto& row : P.rows) {
        row.reserve(std::size_t(dim));
        double sum = 0.0;
        for (int c = 0; c < dim; ++c) {
            const double v = U(gen);
            row.emplace_back(c, v);
            sum += v;
        }
        for (auto& [c, v] : row) v /= sum;
    }
    return P;
}

}  // namespace

static void BM_dihedral_partition(benchmark::State& state) {
    const int n = int(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(parrondo::dihedral_partition(n));
}
BENCHMARK(BM_dihedral_partition)->Arg(12)->Arg(16)->Arg(19)->Unit(benchmark::kMillisecond);

static void BM_gth_dense(benchmark::State& state) {
    const int dim = int(state.range(0));
    const auto P = random_dense(dim, 42);
    for (auto _ : state) benchmark::DoNotOptimize(parrondo::stationary(P));
    const double flops = 2.0 / 3.0 * double(dim) * double(dim) * double(dim);
    state.counters["flops"] =
        benchmark::Counter(flops * double(state.iterations()), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_gth_dense)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_mu_full(benchmark::State& state) {
    const auto gp = params_at(int(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            parrondo::mu_exact(gp, parrondo::game_tag::Cprime, parrondo::solve_method::full));
}
BENCHMARK(BM_mu_full)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_mu_dihedral(benchmark::State& state) {
    const auto gp = params_at(int(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            parrondo::mu_exact(gp, parrondo::game_tag::Cprime, parrondo::solve_method::dihedral));
}
BENCHMARK(BM_mu_dihedral)->Arg(10)->Arg(12)->Arg(14)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_mu_li(benchmark::State& state) {
    const auto gp = params_at(int(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(parrondo::mu_li(gp, parrondo::game_tag::Cprime));
}
BENCHMARK(BM_mu_li)->Arg(100)->Arg(2500)->Arg(100000)->Unit(benchmark::kMicrosecond);

static void BM_simulate(benchmark::State& state) {
    parrondo::sim_config cfg;
    cfg.params = params_at(int(state.range(0)));
    cfg.game = parrondo::game_tag::Cprime;
    cfg.turns = 1 << 20;
    cfg.burn_in = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(parrondo::simulate(cfg));
        cfg.stream += 1;
    }
    state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(cfg.turns));
}
BENCHMARK(BM_simulate)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_scan_li(benchmark::State& state) {
    const int resolution = int(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(parrondo::scan(5, 0.5, resolution, parrondo::region_engine::li));
    const auto pts = double(resolution + 1);
    state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(pts * pts * pts));
}
BENCHMARK(BM_scan_li)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
