#ifndef IDRS_TRACE_HPP
#define IDRS_TRACE_HPP

#include <optional>
#include <vector>

#include "idrs/vec.hpp"

namespace idrs {

/// Per-iteration history: squared step lengths ||x_{n+1} - x_n||^2 and
/// fixed-point residuals.
struct ResidualTrace {
    std::vector<double> step_sq;
    std::vector<double> fp_residual;
};

/// Termination policy. When `reference` is set, an RMSE trace is recorded
/// regardless of the stop kind.
struct StopRule {
    enum class Kind { FpResidual, Rmse, StepNorm, MaxIterOnly };

    Kind kind = Kind::FpResidual;
    double eps = 1e-8;
    long max_iter = 1'000'000;
    std::optional<RealVector> reference;

    static StopRule fp(double eps, long max_iter = 1'000'000) {
        return {Kind::FpResidual, eps, max_iter, std::nullopt};
    }
    static StopRule rmse_to(RealVector ref, double eps, long max_iter = 1'000'000) {
        return {Kind::Rmse, eps, max_iter, std::move(ref)};
    }
    static StopRule step_norm(double eps, long max_iter = 1'000'000) {
        return {Kind::StepNorm, eps, max_iter, std::nullopt};
    }
    static StopRule iterations(long max_iter) {
        return {Kind::MaxIterOnly, 0.0, max_iter, std::nullopt};
    }
};

struct SolveReport {
    long iterations = 0;
    bool converged = false;
    ResidualTrace trace;
    std::vector<double> rmse;       // filled when a reference is supplied
    std::vector<double> objective;  // filled when an objective callback is supplied
};

/// Root-mean-square error sqrt(||x - ref||^2 / dim).
double rmse(const RealVector& x, const RealVector& ref);

} // namespace idrs

#endif
