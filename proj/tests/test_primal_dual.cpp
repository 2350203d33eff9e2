#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "idrs/primal_dual.hpp"
#include "idrs/splitting.hpp"
#include "test_util.hpp"

using namespace idrs;

namespace {

// m = 1 scalar instance min (1/2)x^2: f = 0, g = (1/2)(.)^2, l = ind_{0},
// L = id, z = r = 0.
PrimalDualProblem scalar_problem() {
    PrimalDualProblem prob;
    prob.f = zero_function();
    prob.z = RealVector::zeros(1);
    prob.blocks.push_back(PDBlock{prox_sq_norm(), indicator_zero(), identity_map(1),
                                  RealVector::zeros(1)});
    return prob;
}

PDState scalar_state(double x, double v) {
    return PDState{RealVector({x}), RealVector({x}), {RealVector({v})}, {RealVector({v})}, 1};
}

// 2x2 linear algebra for the dense product-space oracle.
using Mat2 = std::array<std::array<double, 2>, 2>;

RealVector solve2(const Mat2& m, const RealVector& b) {
    const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    return RealVector({(b[0] * m[1][1] - b[1] * m[0][1]) / det,
                       (m[0][0] * b[1] - m[1][0] * b[0]) / det});
}

RealVector mul2(const Mat2& m, const RealVector& x) {
    return RealVector({m[0][0] * x[0] + m[0][1] * x[1], m[1][0] * x[0] + m[1][1] * x[1]});
}

} // namespace

TEST_CASE("validate_stepsizes") {
    auto prob = scalar_problem();
    SUBCASE("unit steps with the identity block") {
        const StepSizes s = validate_stepsizes(prob, 1.0, {1.0});
        CHECK(s.rho == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("boundary excluded by the strict inequality") {
        CHECK_THROWS_AS(validate_stepsizes(prob, 2.0, {2.0}), std::invalid_argument);
    }
    SUBCASE("two blocks of norm sqrt(2)") {
        PrimalDualProblem two;
        two.f = zero_function();
        two.z = RealVector::zeros(2);
        two.blocks.push_back(PDBlock{prox_sq_norm(), indicator_zero(), pairwise_difference_map(),
                                     RealVector::zeros(1)});
        two.blocks.push_back(PDBlock{prox_sq_norm(), indicator_zero(), pairwise_difference_map(),
                                     RealVector::zeros(1)});
        const StepSizes s = validate_stepsizes(two, 1.0, {0.5, 0.5});
        CHECK(s.rho == doctest::Approx((1.0 - 0.5 * std::sqrt(2.0)) * 1.0).epsilon(1e-12));
        CHECK_THROWS_AS(validate_stepsizes(two, 2.0, {1.0, 1.0}), std::invalid_argument);
    }
    SUBCASE("default split saturates the rule at 0.99") {
        const StepSizes s = default_stepsizes(prob);
        CHECK(s.tau == doctest::Approx(std::sqrt(3.96)).epsilon(1e-12));
        CHECK(s.tau == s.sigmas[0]);
    }
}

TEST_CASE("hand-evaluated sweep on the scalar instance") {
    auto prob = scalar_problem();
    const StepSizes steps = validate_stepsizes(prob, 1.0, {1.0});
    const InertialSchedule sched = InertialSchedule::dr_defaults(0.0).with_lambda(1.0);
    auto [state, it] = pd_step(prob, scalar_state(1.0, 0.0), steps, sched);

    CHECK(it.p1 == RealVector({1.0}));
    CHECK(it.w1 == RealVector({1.0}));
    CHECK(it.p2[0] == RealVector({0.25}));
    CHECK(it.w2[0] == RealVector({0.5}));
    CHECK(it.z1 == RealVector({0.75}));
    CHECK(state.x_cur == RealVector({0.75}));
    CHECK(it.z2[0] == RealVector({0.75}));
    CHECK(state.v_cur[0] == RealVector({0.5}));
}

TEST_CASE("all-zero state with zero data is stationary") {
    auto prob = scalar_problem();
    const StepSizes steps = validate_stepsizes(prob, 1.0, {1.0});
    const InertialSchedule sched = InertialSchedule::dr_defaults(0.2);
    auto [state, it] = pd_step(prob, scalar_state(0.0, 0.0), steps, sched);
    CHECK(state.x_cur == RealVector({0.0}));
    CHECK(state.v_cur[0] == RealVector({0.0}));
    CHECK(it.p1 == RealVector({0.0}));
}

TEST_CASE("alpha = 0 sweep matches a plain reference sweep bitwise") {
    auto prob = scalar_problem();
    const StepSizes steps = validate_stepsizes(prob, 1.0, {1.0});
    const InertialSchedule sched = InertialSchedule::dr_defaults(0.0).with_lambda(1.0);
    const double tau = steps.tau, si = steps.sigmas[0], lam = 1.0;

    // reference sweep without inertial terms
    double x = 0.8, v = -0.3;
    std::vector<std::array<double, 2>> ref;
    for (int n = 0; n < 40; ++n) {
        const auto& blk = prob.blocks[0];
        const double p1 = prob.f.prox(tau, RealVector({x - 0.5 * tau * v + tau * 0.0}))[0];
        const double w1 = 2.0 * p1 - x;
        const double p2 = conj_prox_apply(blk.g, si, RealVector({v + 0.5 * si * w1 - si * 0.0}))[0];
        const double w2 = 2.0 * p2 - v;
        const double z1 = w1 - 0.5 * tau * w2;
        x = x + lam * (z1 - p1);
        const double z2 = conj_prox_apply(blk.l, si, RealVector({w2 + 0.5 * si * (2.0 * z1 - w1)}))[0];
        v = v + lam * (z2 - p2);
        ref.push_back({x, v});
    }

    PDState s = scalar_state(0.8, -0.3);
    for (int n = 0; n < 40; ++n) {
        s = pd_step(prob, s, steps, sched).first;
        CHECK(s.x_cur[0] == ref[static_cast<std::size_t>(n)][0]);
        CHECK(s.v_cur[0][0] == ref[static_cast<std::size_t>(n)][1]);
    }
}

TEST_CASE("pd_solve drives the scalar instance to its minimizer") {
    auto prob = scalar_problem();
    const StepSizes steps = validate_stepsizes(prob, 1.0, {1.0});
    const InertialSchedule sched = InertialSchedule::dr_defaults(0.0).with_lambda(1.0);
    auto res = pd_solve(prob, pd_init(prob, RealVector({1.0})), steps, sched,
                        StopRule::fp(1e-13, 100000));
    CHECK(res.report.converged);
    CHECK(std::abs(res.solution.p1[0]) <= 1e-10);
    CHECK(res.report.trace.fp_residual.back() <= 1e-13);

    SUBCASE("optimality residual is zero at the returned tuple and positive off it") {
        CHECK(optimality_residual(prob, res.solution, steps) <= 1e-12);
        PDSolution off = res.solution;
        off.xbar = off.xbar + RealVector({0.1});
        CHECK(optimality_residual(prob, off, steps) > 1e-4);
    }
    SUBCASE("residual trend decreases along the tail") {
        const auto& fp = res.report.trace.fp_residual;
        REQUIRE(fp.size() >= 16);
        CHECK(fp[fp.size() - 1] <= fp[fp.size() / 2]);
        CHECK(fp[fp.size() / 2] <= fp[fp.size() / 4]);
    }
    SUBCASE("squared steps have bounded nondecreasing partial sums") {
        double partial = 0.0;
        for (double s : res.report.trace.step_sq) {
            partial += s;
            CHECK(partial <= 10.0);  // crude cap; summability is asserted by boundedness
        }
    }
}

TEST_CASE("metric map V") {
    auto prob = scalar_problem();
    SUBCASE("closed form at unit steps") {
        const VMap V = v_map(prob, validate_stepsizes(prob, 1.0, {1.0}));
        const BlockVector w({RealVector({2.0}), RealVector({4.0})});
        const BlockVector out = V.apply(w);
        CHECK(out.block(0)[0] == doctest::Approx(2.0 - 2.0).epsilon(1e-15));
        CHECK(out.block(1)[0] == doctest::Approx(4.0 - 1.0).epsilon(1e-15));
    }
    SUBCASE("self-adjointness and strong positivity over random admissible steps") {
        PrimalDualProblem prob3;
        prob3.f = zero_function();
        prob3.z = RealVector::zeros(2);
        LinearMap rot = dense_map({{0.0, 1.0}, {-1.0, 0.0}});
        rot.norm_bound = 1.0;
        prob3.blocks.push_back(PDBlock{prox_sq_norm(), indicator_zero(), identity_map(2),
                                       RealVector::zeros(2)});
        prob3.blocks.push_back(PDBlock{prox_sq_norm(), indicator_zero(), scaling_map(2, 1.5),
                                       RealVector::zeros(2)});
        prob3.blocks.push_back(PDBlock{prox_sq_norm(), indicator_zero(), rot, RealVector::zeros(2)});

        std::mt19937_64 rng(321);
        std::uniform_real_distribution<double> upos(0.05, 3.0), ufrac(0.05, 0.95);
        for (int draw = 0; draw < 20; ++draw) {
            double tau = upos(rng);
            std::vector<double> sig = {upos(rng), upos(rng), upos(rng)};
            double lhs = tau * (sig[0] * 1.0 + sig[1] * 2.25 + sig[2] * 1.0);
            const double target = 4.0 * ufrac(rng);
            const double scale = target / lhs;
            for (double& s : sig) s *= scale;
            const StepSizes steps = validate_stepsizes(prob3, tau, sig);
            const VMap V = v_map(prob3, steps);

            for (int t = 0; t < 1000; ++t) {
                const BlockVector w({test::random_vector(rng, 2, 4.0), test::random_vector(rng, 2, 4.0),
                                     test::random_vector(rng, 2, 4.0), test::random_vector(rng, 2, 4.0)});
                const BlockVector u({test::random_vector(rng, 2, 4.0), test::random_vector(rng, 2, 4.0),
                                     test::random_vector(rng, 2, 4.0), test::random_vector(rng, 2, 4.0)});
                const double sym = inner(V.apply(w), u) - inner(w, V.apply(u));
                CHECK(std::abs(sym) <= 1e-12 * (1.0 + norm(w) * norm(u)));
                CHECK(inner(w, V.apply(w)) - steps.rho * norm_sq(w) >= -1e-9);
            }
        }
    }
}

TEST_CASE("sweep equals abstract splitting under the dense product-space metric") {
    // Scalar instance in K = R^2 with V assembled densely: B = V^{-1}((1/2)S + M),
    // A = V^{-1}((1/2)S + Q); resolvents solved exactly, gamma = 1.
    auto prob = scalar_problem();
    const StepSizes steps = validate_stepsizes(prob, 1.0, {1.0});
    const InertialSchedule sched = InertialSchedule::dr_defaults(0.2);

    const Mat2 V = {{{1.0, -0.5}, {-0.5, 1.0}}};
    const Mat2 VpSM = {{{1.0, 0.0}, {-1.0, 2.0}}};  // V + S/2 + M
    const Mat2 VpSQ = {{{1.0, 0.0}, {-1.0, 1.0}}};  // V + S/2 + Q

    Proximable JB;
    JB.prox = [&](double g, const RealVector& u) {
        REQUIRE(g == 1.0);
        return solve2(VpSM, mul2(V, u));
    };
    Proximable JA;
    JA.prox = [&](double g, const RealVector& u) {
        REQUIRE(g == 1.0);
        return solve2(VpSQ, mul2(V, u));
    };

    DRConfig cfg{1.0, sched};
    DRState ds{RealVector({1.0, 0.0}), RealVector({1.0, 0.0}), 1};
    PDState ps = scalar_state(1.0, 0.0);
    for (int n = 0; n < 50; ++n) {
        ds = dr_step(JA, JB, ds, cfg).first;
        ps = pd_step(prob, ps, steps, sched).first;
        CHECK(std::abs(ds.x_cur[0] - ps.x_cur[0]) <= 1e-10);
        CHECK(std::abs(ds.x_cur[1] - ps.v_cur[0][0]) <= 1e-10);
    }
}

TEST_CASE("diverging operator is reported") {
    PrimalDualProblem prob = scalar_problem();
    prob.f.prox = [](double, const RealVector& x) {
        return RealVector({x[0]});  // fine
    };
    prob.blocks[0].g.prox = [](double, const RealVector&) -> RealVector {
        throw DivergedError("pd_step: non-finite iterate");
    };
    prob.blocks[0].g.conjugate.reset();
    const StepSizes steps = validate_stepsizes(prob, 1.0, {1.0});
    CHECK_THROWS_AS(pd_step(prob, scalar_state(1.0, 0.0), steps, InertialSchedule::dr_defaults(0.0)),
                    DivergedError);
}
