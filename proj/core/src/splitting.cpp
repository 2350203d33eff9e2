#include "idrs/splitting.hpp"

#include <cmath>

#include "solver_detail.hpp"

namespace idrs {

namespace {

RealVector checked_prox(const Proximable& f, double gamma, const RealVector& x, const char* who) {
    RealVector out = f.prox(gamma, x);
    if (out.dim() != x.dim() || !all_finite(out.entries())) {
        throw DivergedError(std::string(who) + ": resolvent produced a non-finite or mis-sized output");
    }
    return out;
}

} // namespace

std::pair<DRState, DRIterates> dr_step(const Proximable& A, const Proximable& B,
                                       const DRState& state, const DRConfig& cfg) {
    if (!(cfg.gamma > 0.0)) throw std::invalid_argument("dr_step: gamma must be positive");
    if (state.x_prev.dim() != state.x_cur.dim()) {
        throw std::invalid_argument("dr_step: state dimension mismatch");
    }
    const double an = detail::inertial_alpha(cfg.sched, state.n);
    const double lam = detail::dr_lambda(cfg.sched, state.n);

    const RealVector w = detail::extrapolate(state.x_cur, state.x_prev, an);
    const RealVector y = checked_prox(B, cfg.gamma, w, "dr_step");
    const RealVector z = checked_prox(A, cfg.gamma, affine_combine(2.0, y, -1.0, w), "dr_step");

    std::vector<double> next(w.dim());
    for (std::size_t i = 0; i < w.dim(); ++i) next[i] = w[i] + lam * (z[i] - y[i]);
    RealVector x_next(std::move(next));

    DRState advanced{state.x_cur, x_next, state.n + 1};
    return {std::move(advanced), DRIterates{std::move(x_next), y, z}};
}

namespace {

DRResult run_dr(const Proximable& A, const Proximable& B, const RealVector& x0,
                const RealVector& x1, const DRConfig& cfg, const StopRule& stop) {
    if (x0.dim() != x1.dim()) throw std::invalid_argument("dr_solve: start dimension mismatch");
    if (cfg.sched.alpha_rule(1) != 0.0 && !(x0 == x1)) {
        throw std::invalid_argument("dr_solve: requires alpha_1 = 0 or x0 = x1");
    }

    DRResult result;
    DRState state{x0, x1, 1};
    for (long n = 1; n <= stop.max_iter; ++n) {
        auto [next, it] = dr_step(A, B, state, cfg);
        const double step_sq = norm_sq(next.x_cur - state.x_cur);
        const double fp = dist(it.z, it.y);
        result.report.trace.step_sq.push_back(step_sq);
        result.report.trace.fp_residual.push_back(fp);
        state = std::move(next);
        result.report.iterations = n;

        double err = 0.0;
        if (stop.reference) {
            err = rmse(it.y, *stop.reference);
            result.report.rmse.push_back(err);
        }
        switch (stop.kind) {
            case StopRule::Kind::FpResidual: result.report.converged = fp <= stop.eps; break;
            case StopRule::Kind::Rmse:
                result.report.converged = stop.reference && err <= stop.eps;
                break;
            case StopRule::Kind::StepNorm:
                result.report.converged = std::sqrt(step_sq) <= stop.eps;
                break;
            case StopRule::Kind::MaxIterOnly: result.report.converged = n == stop.max_iter; break;
        }
        if (result.report.converged) break;
    }
    result.x = state.x_cur;
    result.y = B.prox(cfg.gamma, result.x);
    result.z = A.prox(cfg.gamma, affine_combine(2.0, result.y, -1.0, result.x));
    return result;
}

} // namespace

DRResult dr_solve(const Proximable& A, const Proximable& B, const RealVector& x0,
                  const RealVector& x1, const DRConfig& cfg, const StopRule& stop) {
    return run_dr(A, B, x0, x1, cfg, stop);
}

DRResult classical_dr(const Proximable& A, const Proximable& B, const RealVector& x0,
                      const DRConfig& cfg, const StopRule& stop) {
    DRConfig flat = cfg;
    flat.sched.alpha = 0.0;
    flat.sched.alpha_rule = [](long) { return 0.0; };
    return run_dr(A, B, x0, x0, flat, stop);
}

DRResult inertial_proximal_point(const Proximable& A, const RealVector& x0, const RealVector& x1,
                                 const DRConfig& cfg, const StopRule& stop) {
    return run_dr(A, zero_function(), x0, x1, cfg, stop);
}

double dr_certificate(const Proximable& A, const Proximable& B, double gamma,
                      const RealVector& x_final) {
    const RealVector y = B.prox(gamma, x_final);
    const RealVector z = A.prox(gamma, affine_combine(2.0, y, -1.0, x_final));
    return dist(z, y);
}

bool strong_convergence_check(const DRResult& run, const RealVector& expected, double tol) {
    return dist(run.y, expected) <= tol && dist(run.z, expected) <= tol;
}

} // namespace idrs
