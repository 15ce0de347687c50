#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "msymp/adjointb.hpp"
#include "msymp/claws.hpp"
#include "msymp/dynamics.hpp"
#include "msymp/systems.hpp"

using namespace msymp;

namespace {

StatePoint random_state(std::mt19937_64& rng, const SystemDef& sys) {
    std::uniform_real_distribution<double> any(-2.0, 2.0), pos(0.3, 2.5);
    StatePoint z(sys.n_dep());
    for (int j = 0; j < sys.n_dep(); ++j) z[j] = j == sys.rho_index ? pos(rng) : any(rng);
    return z;
}

void BM_StructureMatrix(benchmark::State& state) {
    const SystemDef sys = state.range(0) == 0 ? gas1d_system() : mhdB_system();
    std::mt19937_64 rng(42);
    const StatePoint z = random_state(rng, sys);
    for (auto _ : state) {
        for (int alpha = 0; alpha < sys.n_indep; ++alpha)
            benchmark::DoNotOptimize(exterior_derivative(sys.oneforms[alpha], z));
    }
}
BENCHMARK(BM_StructureMatrix)->Arg(0)->Arg(1);

void BM_PeriodicDerivative(benchmark::State& state) {
    const Grid1D g{static_cast<int>(state.range(0)), 1.0, 0.0, true};
    std::vector<double> f(g.n);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (double& v : f) v = d(rng);
    for (auto _ : state) benchmark::DoNotOptimize(ddx(f, g));
    state.SetItemsProcessed(state.iterations() * g.n);
}
BENCHMARK(BM_PeriodicDerivative)->Arg(256)->Arg(4096);

void BM_TimeStep(benchmark::State& state) {
    const bool mhd_run = state.range(0) == 1;
    const SystemDef sys = mhd_run ? mhdB_system() : gas1d_system();
    const Grid1D g{512, 1.0, 0.0, true};
    const FieldSet z0 = mhd_run ? make_initial(sys, g, "alfven", {})
                                : make_initial(sys, g, "acoustic", {{"amp", 0.01}});
    const double dt = 1e-4;
    for (auto _ : state) {
        FieldSet z = z0;
        if (mhd_run)
            step_mhd(z, g, sys.eos, MhdForm::B, dt);
        else
            step_gas1d(z, g, sys.eos, dt);
        benchmark::DoNotOptimize(z);
    }
    state.SetItemsProcessed(state.iterations() * g.n);
}
BENCHMARK(BM_TimeStep)->Arg(0)->Arg(1);

void BM_QuadraticForm(benchmark::State& state) {
    const SystemDef sys = gas1d_system();
    const Grid1D g{128, 1.0, 0.0, true};
    RunParams rp;
    rp.t_end = 0.02;
    const FieldHistory h =
        run_simulation(sys, make_initial(sys, g, "acoustic", {{"amp", 0.01}}), g, rp);
    const ColumnSet cols = make_columns(sys, h);
    for (auto _ : state) benchmark::DoNotOptimize(quadratic_form(cols, 1, 0, 1));
}
BENCHMARK(BM_QuadraticForm);

void BM_TransportAdjoint(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const double h = 2.0 * std::numbers::pi / n;
    VectorField3 B = VectorField3::zeros(n, h, h, h);
    VectorField3 W = VectorField3::zeros(n, h, h, h);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (auto& c : B.c)
        for (double& v : c) v = d(rng);
    for (auto& c : W.c)
        for (double& v : c) v = d(rng);
    for (auto _ : state) benchmark::DoNotOptimize(v_b(B, W));
    state.SetItemsProcessed(state.iterations() * n * n * n);
}
BENCHMARK(BM_TransportAdjoint)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
