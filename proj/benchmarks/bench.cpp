#include <benchmark/benchmark.h>

#include "degfront/asymptotics.hpp"
#include "degfront/energy.hpp"
#include "degfront/model.hpp"
#include "degfront/operators.hpp"
#include "degfront/profile.hpp"
#include "degfront/spectra.hpp"

namespace dg = degfront;

namespace {

const dg::Model& model_a() {
    static dg::Model m(1.0, 0.0);
    return m;
}

const dg::Orbit& cached_orbit() {
    static dg::Orbit o = dg::shoot_orbit(model_a(), 1.0);
    return o;
}

dg::FrontProfile profile_with(double h, double X) {
    dg::GridSpec g;
    g.h = h;
    g.Xm = X;
    g.Xp = X;
    return dg::reconstruct_profile(cached_orbit(), model_a(), 1.0, g);
}

const dg::FrontProfile& cached_profile() {
    static dg::FrontProfile p = profile_with(0.05, 40.0);
    return p;
}

void BM_shoot_orbit(benchmark::State& state) {
    for (auto _ : state) {
        dg::Orbit o = dg::shoot_orbit(model_a(), 1.0);
        benchmark::DoNotOptimize(o.classification);
    }
}
BENCHMARK(BM_shoot_orbit)->Unit(benchmark::kMillisecond);

void BM_reconstruct_profile(benchmark::State& state) {
    cached_orbit();
    for (auto _ : state) {
        dg::FrontProfile p = profile_with(0.01, 40.0);
        benchmark::DoNotOptimize(p.phi.data());
    }
}
BENCHMARK(BM_reconstruct_profile)->Unit(benchmark::kMillisecond);

void BM_assemble(benchmark::State& state) {
    const dg::FrontProfile& p = cached_profile();
    for (auto _ : state) {
        dg::OperatorMatrix M = dg::assemble(p, model_a(), 0.0, 1.309);
        benchmark::DoNotOptimize(M.diag.data());
    }
}
BENCHMARK(BM_assemble);

void BM_dispersion_curve(benchmark::State& state) {
    std::vector<double> kg(2001);
    for (int i = 0; i < 2001; ++i) kg[i] = -20.0 + 0.02 * i;
    for (auto _ : state) {
        auto c = dg::dispersion_curve(model_a(), 1.0, 0.01, 1.0, dg::Side::Minus, kg);
        benchmark::DoNotOptimize(c.data());
    }
}
BENCHMARK(BM_dispersion_curve);

void BM_eigen_decomp_small(benchmark::State& state) {
    dg::FrontProfile p = profile_with(0.4, 30.0);
    dg::OperatorMatrix M = dg::assemble(p, model_a(), 0.0, 1.309);
    for (auto _ : state) {
        dg::EigenDecomp ed = dg::eigen_decomp(M, false);
        benchmark::DoNotOptimize(ed.values.data());
    }
}
BENCHMARK(BM_eigen_decomp_small)->Unit(benchmark::kMillisecond);

void BM_energy_identity(benchmark::State& state) {
    const dg::FrontProfile& p = cached_profile();
    std::vector<dg::cplx> u(p.phix.begin(), p.phix.end());
    for (auto _ : state) {
        dg::EnergyReport r = dg::energy_identity(u, {0.0, 0.0}, p, model_a(), -24.0, 8.0);
        benchmark::DoNotOptimize(r.relative_residual);
    }
}
BENCHMARK(BM_energy_identity);

void BM_tail_audit(benchmark::State& state) {
    const dg::FrontProfile& p = cached_profile();
    for (auto _ : state) {
        dg::TailAudit a = dg::tail_audit(p, model_a(), 0.0);
        benchmark::DoNotOptimize(a.envelope_r2);
    }
}
BENCHMARK(BM_tail_audit);

} // namespace

BENCHMARK_MAIN();
