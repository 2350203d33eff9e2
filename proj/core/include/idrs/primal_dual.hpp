#ifndef IDRS_PRIMAL_DUAL_HPP
#define IDRS_PRIMAL_DUAL_HPP

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "idrs/linear_map.hpp"
#include "idrs/prox.hpp"
#include "idrs/schedule.hpp"
#include "idrs/trace.hpp"

namespace idrs {

/// One coupling block of the structured problem: the term (g [] l)(L x - r),
/// with [] the infimal convolution. The sweep needs the conjugate proxes of g
/// and l, obtained from the attached conjugates or the Moreau identity.
struct PDBlock {
    Proximable g;
    Proximable l;
    LinearMap L;
    RealVector r;
};

/// minimize f(x) + sum_i (g_i [] l_i)(L_i x - r_i) - <x, z>.
struct PrimalDualProblem {
    Proximable f;
    RealVector z;
    std::vector<PDBlock> blocks;

    std::size_t primal_dim() const { return z.dim(); }
};

/// Step sizes for the primal-dual sweep, valid iff
/// tau * sum_i sigma_i * ||L_i||^2 < 4. rho is the strong-positivity constant
/// of the induced product-space metric,
/// rho = (1 - sqrt(tau*sum sigma_i*||L_i||^2)/2) * min{1/tau, 1/sigma_1, ...}.
struct StepSizes {
    double tau = 1.0;
    std::vector<double> sigmas;
    double rho = 0.0;
};

/// Validates the step-size rule against certified norm bounds (from
/// `norm_bounds` or, when absent, the maps' own norm_bound fields) and
/// computes rho. Throws with the offending left-hand value on violation.
StepSizes validate_stepsizes(const PrimalDualProblem& problem, double tau,
                             std::vector<double> sigmas,
                             std::optional<std::vector<double>> norm_bounds = std::nullopt);

/// tau = sigma_i = sqrt(4*safety / sum_i ||L_i||^2).
StepSizes default_stepsizes(const PrimalDualProblem& problem, double safety = 0.99);

struct PDState {
    RealVector x_prev, x_cur;
    std::vector<RealVector> v_prev, v_cur;
    long n = 1;
};

/// x0 = x1 = start (or zero), v_{i,0} = v_{i,1} = 0.
PDState pd_init(const PrimalDualProblem& problem, std::optional<RealVector> x_start = std::nullopt);

/// All intermediates of one sweep, in the order they are produced.
struct PDIterates {
    RealVector p1, w1, z1;
    std::vector<RealVector> p2, w2, z2;
};

/// One full sweep:
///   p1 = prox_{tau f}(xe - (tau/2)*sum L_i^* ve_i + tau*z)
///   w1 = 2*p1 - xe
///   per block: p2_i = prox_{sigma_i g_i^*}(ve_i + (sigma_i/2)*L_i w1 - sigma_i r_i)
///              w2_i = 2*p2_i - ve_i
///   z1 = w1 - (tau/2)*sum L_i^* w2_i
///   x_next = xe + lambda_n*(z1 - p1)
///   per block: z2_i = prox_{sigma_i l_i^*}(w2_i + (sigma_i/2)*L_i (2*z1 - w1))
///              v_next_i = ve_i + lambda_n*(z2_i - p2_i)
/// with xe, ve_i the alpha_n-extrapolated points, read once per iteration.
std::pair<PDState, PDIterates> pd_step(const PrimalDualProblem& problem, const PDState& state,
                                       const StepSizes& steps, const InertialSchedule& sched);

/// Limits: (xbar, vbar) of the governing sequences and the primal-dual
/// solution (p1, p2) recomputed from them via
///   p1 = prox_{tau f}(xbar - (tau/2)*sum L_i^* vbar_i + tau*z)
///   p2_i = prox_{sigma_i g_i^*}(vbar_i + (sigma_i/2)*L_i(2*p1 - xbar) - sigma_i r_i).
struct PDSolution {
    RealVector xbar;
    std::vector<RealVector> vbar;
    RealVector p1;
    std::vector<RealVector> p2;
};

struct PDResult {
    PDSolution solution;
    SolveReport report;
};

/// Iterates pd_step until the stop rule fires. The reported fixed-point
/// residual is the product-space norm of (p1 - z1, p2_i - z2_i); RMSE (when a
/// reference is given) measures the primal iterate p1.
PDResult pd_solve(const PrimalDualProblem& problem, const PDState& init, const StepSizes& steps,
                  const InertialSchedule& sched, const StopRule& stop,
                  const std::function<double(const RealVector&)>& objective_fn = nullptr);

/// Max of the fixed-point characterization residuals at a candidate tuple;
/// zero exactly at solutions.
double optimality_residual(const PrimalDualProblem& problem, const PDSolution& candidate,
                           const StepSizes& steps);

/// The self-adjoint product-space metric
/// (x, v_1..v_m) -> (x/tau - (1/2)*sum L_i^* v_i, v_i/sigma_i - (1/2)*L_i x).
/// Diagnostic only; the sweep never assembles or inverts it.
class VMap {
public:
    VMap(const PrimalDualProblem& problem, StepSizes steps);

    BlockVector apply(const BlockVector& w) const;
    double rho() const { return steps_.rho; }
    std::size_t block_count() const { return maps_.size() + 1; }

private:
    StepSizes steps_;
    std::vector<LinearMap> maps_;
};

VMap v_map(const PrimalDualProblem& problem, const StepSizes& steps);

} // namespace idrs

#endif
