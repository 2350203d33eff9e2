#include "idrs/fixpoint.hpp"

#include <cmath>
#include <string>

#include "solver_detail.hpp"

namespace idrs {

namespace {

// Shared by km_step and the Douglas-Rachford/primal-dual sweeps, which allow
// relaxations up to twice the fixed-point bound.
double checked_lambda(const InertialSchedule& sched, long n, double cap_factor) {
    const double lam = sched.lambda_rule(n);
    const double cap = cap_factor * sched.lambda_max();
    if (!(lam > 0.0) || lam > cap * (1.0 + 1e-12)) {
        throw std::invalid_argument("schedule: lambda_" + std::to_string(n) + " = " +
                                    std::to_string(lam) + " outside (0, " + std::to_string(cap) + "]");
    }
    return lam;
}

double checked_alpha(const InertialSchedule& sched, long n) {
    const double an = sched.alpha_rule(n);
    if (!(an >= 0.0) || an > sched.alpha + 1e-15) {
        throw std::invalid_argument("schedule: alpha_" + std::to_string(n) + " = " +
                                    std::to_string(an) + " outside [0, " + std::to_string(sched.alpha) + "]");
    }
    return an;
}

} // namespace

namespace detail {

double dr_lambda(const InertialSchedule& sched, long n) { return checked_lambda(sched, n, 2.0); }
double inertial_alpha(const InertialSchedule& sched, long n) { return checked_alpha(sched, n); }

// w_n = x_n + alpha_n*(x_n - x_{n-1}); the alpha = 0 branch keeps iterates
// bitwise identical to non-inertial loops.
RealVector extrapolate(const RealVector& x_cur, const RealVector& x_prev, double an) {
    if (an == 0.0) return x_cur;
    std::vector<double> w(x_cur.dim());
    for (std::size_t i = 0; i < x_cur.dim(); ++i) {
        w[i] = x_cur[i] + an * (x_cur[i] - x_prev[i]);
    }
    return RealVector(std::move(w));
}

} // namespace detail

KMStep km_step(const NonexpansiveMap& T, const KMState& state, const InertialSchedule& sched) {
    if (state.n < 1) throw std::invalid_argument("km_step: iteration counter must be >= 1");
    if (state.x_prev.dim() != state.x_cur.dim()) {
        throw std::invalid_argument("km_step: state dimension mismatch");
    }
    const double an = checked_alpha(sched, state.n);
    const double lam = checked_lambda(sched, state.n, 1.0);

    const RealVector w = detail::extrapolate(state.x_cur, state.x_prev, an);
    const RealVector tw = T(w);
    if (tw.dim() != w.dim() || !all_finite(tw.entries())) {
        throw DivergedError("km_step: operator produced a non-finite or mis-sized output");
    }

    std::vector<double> next(w.dim());
    double fp_sq = 0.0;
    for (std::size_t i = 0; i < w.dim(); ++i) {
        const double r = tw[i] - w[i];
        fp_sq += r * r;
        next[i] = w[i] + lam * r;
    }
    RealVector x_next(std::move(next));
    double step_sq = 0.0;
    for (std::size_t i = 0; i < x_next.dim(); ++i) {
        const double d = x_next[i] - state.x_cur[i];
        step_sq += d * d;
    }
    return {KMState{state.x_cur, std::move(x_next), state.n + 1}, step_sq, std::sqrt(fp_sq)};
}

KMResult km_solve(const NonexpansiveMap& T, const RealVector& x0, const RealVector& x1,
                  const InertialSchedule& sched, const StopRule& stop) {
    if (x0.dim() != x1.dim()) throw std::invalid_argument("km_solve: start dimension mismatch");
    if (sched.alpha_rule(1) != 0.0 && !(x0 == x1)) {
        throw std::invalid_argument("km_solve: requires alpha_1 = 0 or x0 = x1");
    }

    KMResult result;
    KMState state{x0, x1, 1};
    for (long n = 1; n <= stop.max_iter; ++n) {
        KMStep s = km_step(T, state, sched);
        result.trace.step_sq.push_back(s.step_sq);
        result.trace.fp_residual.push_back(s.fp_residual);
        state = std::move(s.state);
        result.iterations = n;

        double err = 0.0;
        if (stop.reference) {
            err = rmse(state.x_cur, *stop.reference);
            result.rmse.push_back(err);
        }
        switch (stop.kind) {
            case StopRule::Kind::FpResidual: result.converged = s.fp_residual <= stop.eps; break;
            case StopRule::Kind::Rmse: result.converged = stop.reference && err <= stop.eps; break;
            case StopRule::Kind::StepNorm: result.converged = std::sqrt(s.step_sq) <= stop.eps; break;
            case StopRule::Kind::MaxIterOnly: result.converged = n == stop.max_iter; break;
        }
        if (result.converged) break;
    }
    result.x = state.x_cur;
    return result;
}

std::pair<double, double> mu_diagnostic(const RealVector& x_nm1, const RealVector& x_n,
                                        const RealVector& x_np1, const RealVector& y,
                                        const InertialSchedule& sched, long n) {
    if (n < 1) throw std::invalid_argument("mu_diagnostic: n must be >= 1");
    if (x_nm1.dim() != x_n.dim() || x_n.dim() != x_np1.dim() || x_np1.dim() != y.dim()) {
        throw std::invalid_argument("mu_diagnostic: dimension mismatch");
    }
    const double phi_nm1 = norm_sq(x_nm1 - y);
    const double phi_n = norm_sq(x_n - y);
    const double phi_np1 = norm_sq(x_np1 - y);
    const double mu_n =
        phi_n - sched.alpha_rule(n) * phi_nm1 + sched.gamma_coeff(n) * norm_sq(x_n - x_nm1);
    const double mu_np1 =
        phi_np1 - sched.alpha_rule(n + 1) * phi_n + sched.gamma_coeff(n + 1) * norm_sq(x_np1 - x_n);
    return {mu_n, mu_np1};
}

} // namespace idrs
