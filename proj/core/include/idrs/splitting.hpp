#ifndef IDRS_SPLITTING_HPP
#define IDRS_SPLITTING_HPP

#include <utility>

#include "idrs/prox.hpp"
#include "idrs/schedule.hpp"
#include "idrs/trace.hpp"

namespace idrs {

/// Configuration of the inertial Douglas-Rachford iteration. The schedule's
/// relaxation may go up to twice the fixed-point bound; each sweep is the
/// fixed-point update for T = R_{gamma A} o R_{gamma B} at relaxation
/// lambda_n / 2.
struct DRConfig {
    double gamma = 1.0;
    InertialSchedule sched = InertialSchedule::dr_defaults(0.0);
};

struct DRState {
    RealVector x_prev;
    RealVector x_cur;
    long n = 1;
};

/// One sweep's intermediates: x holds the advanced governing point x_{n+1},
/// y = J_{gamma B}(w_n) the shadow point, z = J_{gamma A}(2y - w_n). The
/// fixed-point residual reported is ||z - y||.
struct DRIterates {
    RealVector x;
    RealVector y;
    RealVector z;
};

/// y_n = J_{gamma B}(w_n); z_n = J_{gamma A}(2*y_n - w_n);
/// x_{n+1} = w_n + lambda_n*(z_n - y_n).
std::pair<DRState, DRIterates> dr_step(const Proximable& A, const Proximable& B,
                                       const DRState& state, const DRConfig& cfg);

/// y and z are recomputed from the final governing point: y = J_{gamma B}(x),
/// z = J_{gamma A}(2y - x). The shadow point y is the solution estimate; x is
/// only a fixed point of the reflected composition.
struct DRResult {
    RealVector y;
    RealVector z;
    RealVector x;
    SolveReport report;
};

DRResult dr_solve(const Proximable& A, const Proximable& B, const RealVector& x0,
                  const RealVector& x1, const DRConfig& cfg, const StopRule& stop);

/// dr_solve with the inertia forced off (alpha_n = 0 for all n).
DRResult classical_dr(const Proximable& A, const Proximable& B, const RealVector& x0,
                      const DRConfig& cfg, const StopRule& stop);

/// Special case B = 0:
/// x_{n+1} = lambda_n*J_{gamma A}(w_n) + (1 - lambda_n)*w_n.
DRResult inertial_proximal_point(const Proximable& A, const RealVector& x0, const RealVector& x1,
                                 const DRConfig& cfg, const StopRule& stop);

/// Inclusion certificate at the final governing point:
/// ||J_{gamma A}(2*J_{gamma B}(x) - x) - J_{gamma B}(x)||.
double dr_certificate(const Proximable& A, const Proximable& B, double gamma, const RealVector& x_final);

/// True iff both the shadow and z sequences ended within tol of `expected`.
/// Meaningful when A or B is uniformly monotone (unique zero).
bool strong_convergence_check(const DRResult& run, const RealVector& expected, double tol);

} // namespace idrs

#endif
