#include "idrs/primal_dual.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "solver_detail.hpp"

namespace idrs {

StepSizes validate_stepsizes(const PrimalDualProblem& problem, double tau,
                             std::vector<double> sigmas,
                             std::optional<std::vector<double>> norm_bounds) {
    const std::size_t m = problem.blocks.size();
    if (m < 1) throw std::invalid_argument("validate_stepsizes: problem has no blocks");
    if (!(tau > 0.0)) throw std::invalid_argument("validate_stepsizes: tau must be positive");
    if (sigmas.size() != m) throw std::invalid_argument("validate_stepsizes: need one sigma per block");
    for (double s : sigmas) {
        if (!(s > 0.0)) throw std::invalid_argument("validate_stepsizes: sigmas must be positive");
    }

    std::vector<double> nu;
    if (norm_bounds) {
        if (norm_bounds->size() != m) {
            throw std::invalid_argument("validate_stepsizes: need one norm bound per block");
        }
        nu = *norm_bounds;
    } else {
        nu.reserve(m);
        for (const auto& b : problem.blocks) {
            if (!b.L.norm_bound) {
                throw std::invalid_argument(
                    "validate_stepsizes: block operator carries no certified norm bound");
            }
            nu.push_back(*b.L.norm_bound);
        }
    }

    double lhs = 0.0;
    for (std::size_t i = 0; i < m; ++i) lhs += sigmas[i] * nu[i] * nu[i];
    lhs *= tau;
    if (!(lhs < 4.0)) {
        throw std::invalid_argument("validate_stepsizes: tau * sum sigma_i*||L_i||^2 = " +
                                    std::to_string(lhs) + " must be < 4");
    }

    double inv_min = 1.0 / tau;
    for (double s : sigmas) inv_min = std::min(inv_min, 1.0 / s);
    StepSizes out;
    out.tau = tau;
    out.sigmas = std::move(sigmas);
    out.rho = (1.0 - 0.5 * std::sqrt(lhs)) * inv_min;
    return out;
}

StepSizes default_stepsizes(const PrimalDualProblem& problem, double safety) {
    if (!(safety > 0.0 && safety < 1.0)) {
        throw std::invalid_argument("default_stepsizes: safety must lie in (0,1)");
    }
    double nu_sq_sum = 0.0;
    for (const auto& b : problem.blocks) {
        if (!b.L.norm_bound) {
            throw std::invalid_argument("default_stepsizes: block operator carries no norm bound");
        }
        nu_sq_sum += *b.L.norm_bound * *b.L.norm_bound;
    }
    const double c = std::sqrt(4.0 * safety / nu_sq_sum);
    return validate_stepsizes(problem, c, std::vector<double>(problem.blocks.size(), c));
}

PDState pd_init(const PrimalDualProblem& problem, std::optional<RealVector> x_start) {
    RealVector x = x_start ? std::move(*x_start) : RealVector::zeros(problem.primal_dim());
    if (x.dim() != problem.primal_dim()) {
        throw std::invalid_argument("pd_init: start dimension mismatch");
    }
    std::vector<RealVector> v;
    v.reserve(problem.blocks.size());
    for (const auto& b : problem.blocks) v.push_back(RealVector::zeros(b.L.out_dim));
    return PDState{x, x, v, v, 1};
}

namespace {

RealVector checked(RealVector v, const char* who) {
    if (!all_finite(v.entries())) {
        throw DivergedError(std::string(who) + ": non-finite iterate");
    }
    return v;
}

} // namespace

std::pair<PDState, PDIterates> pd_step(const PrimalDualProblem& problem, const PDState& state,
                                       const StepSizes& steps, const InertialSchedule& sched) {
    const std::size_t m = problem.blocks.size();
    if (state.v_cur.size() != m || state.v_prev.size() != m) {
        throw std::invalid_argument("pd_step: state block count mismatch");
    }
    const double an = detail::inertial_alpha(sched, state.n);
    const double lam = detail::dr_lambda(sched, state.n);
    const double tau = steps.tau;

    const RealVector xe = detail::extrapolate(state.x_cur, state.x_prev, an);
    std::vector<RealVector> ve;
    ve.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        ve.push_back(detail::extrapolate(state.v_cur[i], state.v_prev[i], an));
    }

    // p1 = prox_{tau f}(xe - (tau/2) sum L_i^* ve_i + tau z), ordered reduction.
    std::vector<double> p1_in(xe.entries());
    for (std::size_t i = 0; i < m; ++i) {
        const RealVector a = problem.blocks[i].L.apply_adjoint(ve[i]);
        for (std::size_t k = 0; k < p1_in.size(); ++k) p1_in[k] -= 0.5 * tau * a[k];
    }
    for (std::size_t k = 0; k < p1_in.size(); ++k) p1_in[k] += tau * problem.z[k];
    const RealVector p1 = checked(problem.f.prox(tau, RealVector(std::move(p1_in))), "pd_step");
    const RealVector w1 = affine_combine(2.0, p1, -1.0, xe);

    std::vector<RealVector> p2, w2;
    p2.reserve(m);
    w2.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& blk = problem.blocks[i];
        const double si = steps.sigmas[i];
        const RealVector lw = blk.L.apply(w1);
        std::vector<double> in(ve[i].entries());
        for (std::size_t k = 0; k < in.size(); ++k) in[k] += 0.5 * si * lw[k] - si * blk.r[k];
        p2.push_back(checked(conj_prox_apply(blk.g, si, RealVector(std::move(in))), "pd_step"));
        w2.push_back(affine_combine(2.0, p2[i], -1.0, ve[i]));
    }

    std::vector<double> z1_in(w1.entries());
    for (std::size_t i = 0; i < m; ++i) {
        const RealVector a = problem.blocks[i].L.apply_adjoint(w2[i]);
        for (std::size_t k = 0; k < z1_in.size(); ++k) z1_in[k] -= 0.5 * tau * a[k];
    }
    const RealVector z1(std::move(z1_in));

    std::vector<double> x_next(xe.entries());
    for (std::size_t k = 0; k < x_next.size(); ++k) x_next[k] += lam * (z1[k] - p1[k]);

    std::vector<RealVector> z2, v_next;
    z2.reserve(m);
    v_next.reserve(m);
    const RealVector zdir = affine_combine(2.0, z1, -1.0, w1);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& blk = problem.blocks[i];
        const double si = steps.sigmas[i];
        const RealVector lz = blk.L.apply(zdir);
        std::vector<double> in(w2[i].entries());
        for (std::size_t k = 0; k < in.size(); ++k) in[k] += 0.5 * si * lz[k];
        z2.push_back(checked(conj_prox_apply(blk.l, si, RealVector(std::move(in))), "pd_step"));
        std::vector<double> vn(ve[i].entries());
        for (std::size_t k = 0; k < vn.size(); ++k) vn[k] += lam * (z2[i][k] - p2[i][k]);
        v_next.push_back(RealVector(std::move(vn)));
    }

    PDState advanced{state.x_cur, RealVector(std::move(x_next)), state.v_cur, std::move(v_next),
                     state.n + 1};
    return {std::move(advanced), PDIterates{p1, w1, z1, std::move(p2), std::move(w2), std::move(z2)}};
}

namespace {

RealVector recompute_p1(const PrimalDualProblem& problem, const StepSizes& steps,
                        const RealVector& xbar, const std::vector<RealVector>& vbar) {
    std::vector<double> in(xbar.entries());
    for (std::size_t i = 0; i < problem.blocks.size(); ++i) {
        const RealVector a = problem.blocks[i].L.apply_adjoint(vbar[i]);
        for (std::size_t k = 0; k < in.size(); ++k) in[k] -= 0.5 * steps.tau * a[k];
    }
    for (std::size_t k = 0; k < in.size(); ++k) in[k] += steps.tau * problem.z[k];
    return problem.f.prox(steps.tau, RealVector(std::move(in)));
}

RealVector recompute_p2(const PrimalDualProblem& problem, const StepSizes& steps, std::size_t i,
                        const RealVector& xbar, const std::vector<RealVector>& vbar,
                        const RealVector& p1) {
    const auto& blk = problem.blocks[i];
    const double si = steps.sigmas[i];
    const RealVector lp = blk.L.apply(affine_combine(2.0, p1, -1.0, xbar));
    std::vector<double> in(vbar[i].entries());
    for (std::size_t k = 0; k < in.size(); ++k) in[k] += 0.5 * si * lp[k] - si * blk.r[k];
    return conj_prox_apply(blk.g, si, RealVector(std::move(in)));
}

} // namespace

PDResult pd_solve(const PrimalDualProblem& problem, const PDState& init, const StepSizes& steps,
                  const InertialSchedule& sched, const StopRule& stop,
                  const std::function<double(const RealVector&)>& objective_fn) {
    PDResult result;
    PDState state = init;
    const std::size_t m = problem.blocks.size();

    for (long n = 1; n <= stop.max_iter; ++n) {
        auto [next, it] = pd_step(problem, state, steps, sched);

        double step_sq = norm_sq(next.x_cur - state.x_cur);
        for (std::size_t i = 0; i < m; ++i) step_sq += norm_sq(next.v_cur[i] - state.v_cur[i]);
        double fp_sq = norm_sq(it.p1 - it.z1);
        for (std::size_t i = 0; i < m; ++i) fp_sq += norm_sq(it.p2[i] - it.z2[i]);
        const double fp = std::sqrt(fp_sq);

        result.report.trace.step_sq.push_back(step_sq);
        result.report.trace.fp_residual.push_back(fp);
        if (objective_fn) result.report.objective.push_back(objective_fn(it.p1));
        state = std::move(next);
        result.report.iterations = n;

        double err = 0.0;
        if (stop.reference) {
            err = rmse(it.p1, *stop.reference);
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

    PDSolution sol;
    sol.xbar = state.x_cur;
    sol.vbar = state.v_cur;
    sol.p1 = recompute_p1(problem, steps, sol.xbar, sol.vbar);
    sol.p2.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        sol.p2.push_back(recompute_p2(problem, steps, i, sol.xbar, sol.vbar, sol.p1));
    }
    result.solution = std::move(sol);
    return result;
}

double optimality_residual(const PrimalDualProblem& problem, const PDSolution& candidate,
                           const StepSizes& steps) {
    const std::size_t m = problem.blocks.size();
    if (candidate.vbar.size() != m || candidate.p2.size() != m) {
        throw std::invalid_argument("optimality_residual: candidate block count mismatch");
    }
    double res = dist(candidate.p1, recompute_p1(problem, steps, candidate.xbar, candidate.vbar));
    for (std::size_t i = 0; i < m; ++i) {
        res = std::max(res, dist(candidate.p2[i], recompute_p2(problem, steps, i, candidate.xbar,
                                                               candidate.vbar, candidate.p1)));
    }
    return res;
}

VMap::VMap(const PrimalDualProblem& problem, StepSizes steps) : steps_(std::move(steps)) {
    maps_.reserve(problem.blocks.size());
    for (const auto& b : problem.blocks) maps_.push_back(b.L);
}

BlockVector VMap::apply(const BlockVector& w) const {
    if (w.block_count() != maps_.size() + 1) {
        throw std::invalid_argument("VMap: block count mismatch");
    }
    std::vector<RealVector> out;
    out.reserve(w.block_count());
    std::vector<double> head(w.block(0).entries());
    for (std::size_t k = 0; k < head.size(); ++k) head[k] /= steps_.tau;
    for (std::size_t i = 0; i < maps_.size(); ++i) {
        const RealVector a = maps_[i].apply_adjoint(w.block(i + 1));
        for (std::size_t k = 0; k < head.size(); ++k) head[k] -= 0.5 * a[k];
    }
    out.push_back(RealVector(std::move(head)));
    for (std::size_t i = 0; i < maps_.size(); ++i) {
        const RealVector lx = maps_[i].apply(w.block(0));
        std::vector<double> blk(w.block(i + 1).entries());
        for (std::size_t k = 0; k < blk.size(); ++k) {
            blk[k] = blk[k] / steps_.sigmas[i] - 0.5 * lx[k];
        }
        out.push_back(RealVector(std::move(blk)));
    }
    return BlockVector(std::move(out));
}

VMap v_map(const PrimalDualProblem& problem, const StepSizes& steps) { return VMap(problem, steps); }

} // namespace idrs
