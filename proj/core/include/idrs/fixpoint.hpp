#ifndef IDRS_FIXPOINT_HPP
#define IDRS_FIXPOINT_HPP

#include <functional>
#include <utility>

#include "idrs/schedule.hpp"
#include "idrs/trace.hpp"
#include "idrs/vec.hpp"

namespace idrs {

using NonexpansiveMap = std::function<RealVector(const RealVector&)>;

/// Two-point state of the inertial fixed-point iteration; the extrapolated
/// point w_n = x_n + alpha_n*(x_n - x_{n-1}) is recomputed, not stored.
struct KMState {
    RealVector x_prev;
    RealVector x_cur;
    long n = 1;
};

struct KMStep {
    KMState state;
    double step_sq = 0.0;      // ||x_{n+1} - x_n||^2
    double fp_residual = 0.0;  // ||T w_n - w_n||
};

/// One sweep of x_{n+1} = w_n + lambda_n*(T w_n - w_n). The relaxation must
/// satisfy the fixed-point bound lambda_n <= lambda_max.
KMStep km_step(const NonexpansiveMap& T, const KMState& state, const InertialSchedule& sched);

struct KMResult {
    RealVector x;
    ResidualTrace trace;
    std::vector<double> rmse;
    bool converged = false;
    long iterations = 0;
};

/// Iterates km_step until the stop rule fires. The caller guarantees that T
/// maps a closed affine subspace into itself. Requires alpha_1 = 0 or
/// x0 = x1.
KMResult km_solve(const NonexpansiveMap& T, const RealVector& x0, const RealVector& x1,
                  const InertialSchedule& sched, const StopRule& stop);

/// Lyapunov values (mu_n, mu_{n+1}) around a candidate fixed point y, where
/// mu_n = phi_n - alpha_n*phi_{n-1} + gamma_n*||x_n - x_{n-1}||^2 and
/// phi_n = ||x_n - y||^2. Admissible schedules satisfy
/// mu_{n+1} - mu_n <= -sigma*||x_{n+1} - x_n||^2.
std::pair<double, double> mu_diagnostic(const RealVector& x_nm1, const RealVector& x_n,
                                        const RealVector& x_np1, const RealVector& y,
                                        const InertialSchedule& sched, long n);

} // namespace idrs

#endif
