#include "toy_suites.hpp"

#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <vector>

#include "idrs/fixpoint.hpp"
#include "idrs/primal_dual.hpp"
#include "idrs/splitting.hpp"

namespace idrs::tools {

namespace {

RealVector rand_vec(std::mt19937_64& rng, std::size_t dim, double scale) {
    std::uniform_real_distribution<double> unif(-scale, scale);
    std::vector<double> e(dim);
    for (double& x : e) x = unif(rng);
    return RealVector(std::move(e));
}

bool suite_km(double alpha, double sigma) {
    const NonexpansiveMap T = [](const RealVector& x) {
        return RealVector({0.5 * x[0] + 1.0});
    };
    auto res = km_solve(T, RealVector({0.0}), RealVector({0.0}),
                        InertialSchedule::km_defaults(alpha, sigma), StopRule::fp(1e-12));
    if (!res.converged || std::abs(res.x[0] - 2.0) > 1e-8) return false;

    const NonexpansiveMap rot = [](const RealVector& x) { return RealVector({-x[1], x[0]}); };
    auto sched = InertialSchedule::km_defaults(alpha, sigma);
    sched = sched.with_lambda(std::min(0.45, sched.lambda_lo));
    auto rres = km_solve(rot, RealVector({1.0, 1.0}), RealVector({1.0, 1.0}), sched,
                         StopRule::fp(1e-11));
    return rres.converged && norm(rres.x) <= 1e-9;
}

bool suite_mu_descent(double alpha, double sigma) {
    const NonexpansiveMap T = [](const RealVector& x) {
        return RealVector({0.5 * x[0] + 1.0});
    };
    auto sched = InertialSchedule::km_defaults(alpha, sigma);
    const RealVector y({2.0});
    std::vector<RealVector> xs = {RealVector({0.0}), RealVector({0.0})};
    KMState s{xs[0], xs[1], 1};
    for (int i = 0; i < 60; ++i) {
        s = km_step(T, s, sched).state;
        xs.push_back(s.x_cur);
    }
    for (std::size_t n = 1; n + 1 < xs.size(); ++n) {
        auto [mu_n, mu_np1] = mu_diagnostic(xs[n - 1], xs[n], xs[n + 1], y, sched,
                                            static_cast<long>(n));
        if (mu_np1 - mu_n + sched.sigma * norm_sq(xs[n + 1] - xs[n]) > 1e-10) return false;
    }
    return true;
}

bool suite_moreau(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::vector<Proximable> fs = {prox_sq_dist(RealVector({1.0, -2.0, 0.5})), prox_sq_norm(),
                                        prox_norm2(1.5), prox_norm1(0.8), zero_function(),
                                        indicator_zero()};
    for (const auto& f : fs) {
        if (!f.conjugate) continue;
        for (double g : {0.1, 1.0, 10.0}) {
            for (int t = 0; t < 400; ++t) {
                const RealVector x = rand_vec(rng, 3, 5.0);
                const RealVector r = f.prox(g, x) + g * f.conjugate->prox(1.0 / g, (1.0 / g) * x) - x;
                if (norm(r) > 1e-10) return false;
            }
        }
    }
    return true;
}

bool suite_dr_scalar(double alpha, double sigma) {
    const Proximable A = prox_translate(prox_norm2(1.0), RealVector({1.0}));
    const Proximable B = prox_sq_norm();
    for (double gamma : {0.5, 1.0, 2.0}) {
        DRConfig cfg{gamma, InertialSchedule::dr_defaults(alpha, sigma)};
        auto res = dr_solve(A, B, RealVector({0.0}), RealVector({0.0}), cfg,
                            StopRule::fp(1e-12, 200000));
        if (!res.report.converged || std::abs(res.y[0] - 1.0) > 1e-8) return false;
    }
    return true;
}

bool suite_pd_sweep() {
    PrimalDualProblem prob;
    prob.f = zero_function();
    prob.z = RealVector::zeros(1);
    prob.blocks.push_back(PDBlock{prox_sq_norm(), indicator_zero(), identity_map(1),
                                  RealVector::zeros(1)});
    const StepSizes steps = validate_stepsizes(prob, 1.0, {1.0});
    const InertialSchedule sched = InertialSchedule::dr_defaults(0.0).with_lambda(1.0);
    PDState st{RealVector({1.0}), RealVector({1.0}), {RealVector({0.0})}, {RealVector({0.0})}, 1};
    auto [state, it] = pd_step(prob, st, steps, sched);
    return it.p1[0] == 1.0 && it.p2[0][0] == 0.25 && it.z1[0] == 0.75 && state.x_cur[0] == 0.75 &&
           it.z2[0][0] == 0.75 && state.v_cur[0][0] == 0.5;
}

bool suite_v_positivity(std::uint64_t seed) {
    PrimalDualProblem prob;
    prob.f = zero_function();
    prob.z = RealVector::zeros(2);
    prob.blocks.push_back(PDBlock{prox_sq_norm(), indicator_zero(), identity_map(2),
                                  RealVector::zeros(2)});
    prob.blocks.push_back(PDBlock{prox_sq_norm(), indicator_zero(), scaling_map(2, 2.0),
                                  RealVector::zeros(2)});
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> upos(0.05, 2.0), ufrac(0.05, 0.95);
    for (int draw = 0; draw < 10; ++draw) {
        double tau = upos(rng);
        std::vector<double> sig = {upos(rng), upos(rng)};
        const double lhs = tau * (sig[0] + 4.0 * sig[1]);
        const double scale = 4.0 * ufrac(rng) / lhs;
        for (double& s : sig) s *= scale;
        const StepSizes steps = validate_stepsizes(prob, tau, sig);
        const VMap V = v_map(prob, steps);
        for (int t = 0; t < 500; ++t) {
            const BlockVector w({rand_vec(rng, 2, 4.0), rand_vec(rng, 2, 4.0), rand_vec(rng, 2, 4.0)});
            const BlockVector u({rand_vec(rng, 2, 4.0), rand_vec(rng, 2, 4.0), rand_vec(rng, 2, 4.0)});
            if (std::abs(inner(V.apply(w), u) - inner(w, V.apply(u))) >
                1e-12 * (1.0 + norm(w) * norm(u))) {
                return false;
            }
            if (inner(w, V.apply(w)) - steps.rho * norm_sq(w) < -1e-9) return false;
        }
    }
    return true;
}

} // namespace

int run_toy_suites(double alpha, double sigma, std::uint64_t seed) {
    const std::vector<std::pair<const char*, std::function<bool()>>> suites = {
        {"fixed-point toys", [&] { return suite_km(alpha, sigma); }},
        {"mu descent", [&] { return suite_mu_descent(alpha, sigma); }},
        {"moreau decomposition", [&] { return suite_moreau(seed); }},
        {"dr scalar", [&] { return suite_dr_scalar(alpha, sigma); }},
        {"pd hand sweep", [&] { return suite_pd_sweep(); }},
        {"v positivity", [&] { return suite_v_positivity(seed); }},
    };
    bool ok = true;
    for (const auto& [name, run] : suites) {
        bool pass = false;
        try {
            pass = run();
        } catch (const std::exception& e) {
            std::cout << "[fail] " << name << " (" << e.what() << ")\n";
            ok = false;
            continue;
        }
        std::cout << (pass ? "[ok]   " : "[fail] ") << name << '\n';
        ok = ok && pass;
    }
    return ok ? 0 : 1;
}

} // namespace idrs::tools
