// Compares the serial reference Gram kernel against the OpenMP one and
// the Monte Carlo engine at different worker counts.

#include <benchmark/benchmark.h>

#include "sphericity/matrix.hpp"
#include "sphericity/montecarlo.hpp"
#include "sphericity/populations.hpp"

using namespace sphericity;

namespace {

Eigen::MatrixXd make_data(Eigen::Index p, Eigen::Index n) {
    PopulationSpec pop;
    pop.sigma.p = p;
    return sample(pop, p, n, SeedSpec{12345, 0}).values();
}

void bm_gram_serial(benchmark::State& state) {
    const Eigen::MatrixXd x = make_data(state.range(0), 64);
    for (auto _ : state) {
        Eigen::MatrixXd g = gram_matrix(x, GramKernel::Serial);
        benchmark::DoNotOptimize(g.data());
    }
}

void bm_gram_openmp(benchmark::State& state) {
    const Eigen::MatrixXd x = make_data(state.range(0), 64);
    for (auto _ : state) {
        Eigen::MatrixXd g = gram_matrix(x, GramKernel::OpenMP);
        benchmark::DoNotOptimize(g.data());
    }
}

ExperimentPlan small_plan() {
    ExperimentPlan plan;
    plan.grid = {{640, 64}};
    plan.tests = {TestKind::John, TestKind::QLRT, TestKind::Srivastava};
    plan.scenarios = {{"size", {ScaledIdentity{1.0}, 0}}};
    plan.replications = 200;
    plan.master_seed = 7;
    return plan;
}

void bm_montecarlo_workers(benchmark::State& state) {
    const ExperimentPlan plan = small_plan();
    for (auto _ : state) {
        SimulationReport r = run_size_power(plan, int(state.range(0)));
        benchmark::DoNotOptimize(r.rows.data());
    }
}

}  // namespace

BENCHMARK(bm_gram_serial)->Arg(320)->Arg(1280)->Arg(3200)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_gram_openmp)->Arg(320)->Arg(1280)->Arg(3200)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_montecarlo_workers)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
