#include <benchmark/benchmark.h>

#include "idrs/clustering.hpp"
#include "idrs/fixpoint.hpp"
#include "idrs/splitting.hpp"

using namespace idrs;

namespace {

void BM_km_step(benchmark::State& state) {
    const NonexpansiveMap rot = [](const RealVector& x) { return RealVector({-x[1], x[0]}); };
    const auto sched = InertialSchedule::km_defaults(0.2).with_lambda(0.4);
    KMState s{RealVector({1.0, 0.0}), RealVector({1.0, 0.0}), 1};
    for (auto _ : state) {
        s = km_step(rot, s, sched).state;
        benchmark::DoNotOptimize(s.x_cur);
    }
}
BENCHMARK(BM_km_step);

void BM_dr_step_scalar(benchmark::State& state) {
    const Proximable A = prox_translate(prox_norm2(1.0), RealVector({1.0}));
    const Proximable B = prox_sq_norm();
    DRConfig cfg{1.0, InertialSchedule::dr_defaults(0.2)};
    DRState s{RealVector({0.0}), RealVector({0.0}), 1};
    for (auto _ : state) {
        s = dr_step(A, B, s, cfg).first;
        benchmark::DoNotOptimize(s.x_cur);
    }
}
BENCHMARK(BM_dr_step_scalar);

void BM_pd_step_clustering(benchmark::State& state) {
    const auto pts = gen_half_moons(0, static_cast<int>(state.range(0)), 0.05);
    const auto inst = make_clustering_instance(pts, 2, 5.2, std::min<int>(10, static_cast<int>(pts.size()) - 1), 0.5);
    const auto prob = build_clustering_problem(inst);
    const auto steps = default_stepsizes(prob);
    const auto sched = InertialSchedule::dr_defaults(0.2);
    PDState s = pd_init(prob);
    for (auto _ : state) {
        s = pd_step(prob, s, steps, sched).first;
        benchmark::DoNotOptimize(s.x_cur);
    }
}
BENCHMARK(BM_pd_step_clustering)->Arg(25)->Arg(100);

void BM_power_iteration(benchmark::State& state) {
    const auto pts = gen_half_moons(0, 100, 0.05);
    const auto edges = knn_weights(pts, 10, 0.5);
    const LinearMap L = difference_map(pts.size(), 2, edges);
    for (auto _ : state) {
        benchmark::DoNotOptimize(op_norm_estimate(L, 1e-9, 5000, 0).value);
    }
}
BENCHMARK(BM_power_iteration);

} // namespace

BENCHMARK_MAIN();
