#include "idrs/heron.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace idrs {

HeronInstance make_heron_instance(int n, int m, std::uint64_t seed) {
    if (n < 1 || m < 1) throw std::invalid_argument("make_heron_instance: n and m must be >= 1");
    HeronInstance inst;
    inst.dim = n;
    inst.ball_center = RealVector::constant(n, 1.0);
    inst.ball_radius = 1.0;
    inst.seed = seed;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, static_cast<double>(n));
    inst.boxes.reserve(m);
    for (int i = 0; i < m; ++i) {
        std::vector<double> lo(n), hi(n);
        for (int d = 0; d < n; ++d) {
            const double c = gauss(rng);
            lo[d] = c - 0.5;
            hi[d] = c + 0.5;
        }
        inst.boxes.push_back(Box{RealVector(std::move(lo)), RealVector(std::move(hi))});
    }
    return inst;
}

PrimalDualProblem build_heron_problem(const HeronInstance& inst) {
    const std::size_t n = static_cast<std::size_t>(inst.dim);
    PrimalDualProblem prob;
    prob.f = project_ball(inst.ball_center, inst.ball_radius);
    prob.z = RealVector::zeros(n);
    prob.blocks.reserve(inst.boxes.size());
    for (const auto& box : inst.boxes) {
        prob.blocks.push_back(
            PDBlock{prox_norm2(1.0), project_box(box.lo, box.hi), identity_map(n), RealVector::zeros(n)});
    }
    return prob;
}

namespace {

RealVector clamp_to_box(const Box& box, const RealVector& x) {
    std::vector<double> out(x.dim());
    for (std::size_t d = 0; d < x.dim(); ++d) out[d] = std::clamp(x[d], box.lo[d], box.hi[d]);
    return RealVector(std::move(out));
}

} // namespace

double heron_objective(const HeronInstance& inst, const RealVector& x) {
    if (x.dim() != static_cast<std::size_t>(inst.dim)) {
        throw std::invalid_argument("heron_objective: dimension mismatch");
    }
    double s = 0.0;
    for (const auto& box : inst.boxes) s += dist(x, clamp_to_box(box, x));
    return s;
}

std::function<double(long)> diminishing_steps(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("diminishing_steps: c must be positive");
    return [c](long k) { return c / static_cast<double>(k); };
}

SubgradResult heron_subgradient(const HeronInstance& inst, const std::function<double(long)>& step,
                                const StopRule& stop) {
    const Proximable ball = project_ball(inst.ball_center, inst.ball_radius);
    RealVector x = inst.ball_center;
    RealVector best = x;
    double best_obj = heron_objective(inst, x);

    SubgradResult result;
    for (long k = 1; k <= stop.max_iter; ++k) {
        std::vector<double> g(x.dim(), 0.0);
        for (const auto& box : inst.boxes) {
            const RealVector p = clamp_to_box(box, x);
            const double d = dist(x, p);
            if (d > 1e-12) {
                for (std::size_t i = 0; i < x.dim(); ++i) g[i] += (x[i] - p[i]) / d;
            }
        }
        const double tk = step(k);
        if (!(tk > 0.0)) throw std::invalid_argument("heron_subgradient: steps must be positive");
        std::vector<double> xn(x.dim());
        for (std::size_t i = 0; i < x.dim(); ++i) xn[i] = x[i] - tk * g[i];
        RealVector x_next = ball.prox(1.0, RealVector(std::move(xn)));

        const double step_norm = dist(x_next, x);
        x = std::move(x_next);
        const double obj = heron_objective(inst, x);
        if (obj < best_obj) {
            best_obj = obj;
            best = x;
        }

        result.report.trace.step_sq.push_back(step_norm * step_norm);
        result.report.trace.fp_residual.push_back(step_norm);
        result.report.objective.push_back(best_obj);
        result.report.iterations = k;

        double err = 0.0;
        if (stop.reference) {
            err = rmse(best, *stop.reference);
            result.report.rmse.push_back(err);
        }
        switch (stop.kind) {
            case StopRule::Kind::FpResidual:
            case StopRule::Kind::StepNorm: result.report.converged = step_norm <= stop.eps; break;
            case StopRule::Kind::Rmse:
                result.report.converged = stop.reference && err <= stop.eps;
                break;
            case StopRule::Kind::MaxIterOnly: result.report.converged = k == stop.max_iter; break;
        }
        if (result.report.converged) break;
    }
    result.x = std::move(best);
    return result;
}

} // namespace idrs
