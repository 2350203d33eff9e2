#ifndef IDRS_LINEAR_MAP_HPP
#define IDRS_LINEAR_MAP_HPP

#include <cstdint>
#include <functional>
#include <optional>

#include "idrs/vec.hpp"

namespace idrs {

/// Matrix-free linear operator with its adjoint and dimension metadata.
/// norm_bound, when set, is a certified upper bound on the operator norm.
struct LinearMap {
    std::size_t in_dim = 0;
    std::size_t out_dim = 0;
    std::function<RealVector(const RealVector&)> forward;
    std::function<RealVector(const RealVector&)> adjoint;
    std::optional<double> norm_bound;

    RealVector apply(const RealVector& x) const;
    RealVector apply_adjoint(const RealVector& y) const;
};

LinearMap identity_map(std::size_t n);
LinearMap scaling_map(std::size_t n, double c);

/// Dense operator from a row-major matrix; used by tests and small problems.
LinearMap dense_map(std::vector<std::vector<double>> rows);

/// (x1, x2) in R^2 -> x1 - x2 in R^1.
LinearMap pairwise_difference_map();

struct OpNormEstimate {
    double value = 0.0;
    bool converged = false;
    long iterations = 0;
};

/// Power iteration on L*L from a seeded random start. Deterministic for a
/// fixed seed; `converged` is false when the Rayleigh quotient did not
/// stabilize within max_iter (the best estimate is still returned).
OpNormEstimate op_norm_estimate(const LinearMap& L, double tol = 1e-9, long max_iter = 5000,
                                std::uint64_t seed = 0);

} // namespace idrs

#endif
