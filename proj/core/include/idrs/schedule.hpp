#ifndef IDRS_SCHEDULE_HPP
#define IDRS_SCHEDULE_HPP

#include <functional>

namespace idrs {

/// Inertial parameter bundle (alpha, sigma, delta) with the per-iteration
/// rules n -> alpha_n and n -> lambda_n. Admissibility:
///   delta > (alpha^2*(1+alpha) + alpha*sigma) / (1 - alpha^2),
///   alpha_1 = 0 (or equal start points), alpha_n nondecreasing in [0, alpha],
///   0 < lambda_lo <= lambda_n <= lambda_max (fixed-point iteration) or
///   2*lambda_max (Douglas-Rachford-type updates).
struct InertialSchedule {
    double alpha = 0.0;
    double sigma = 1e-6;
    double delta = 1.0;
    double lambda_lo = 0.0;
    std::function<double(long)> alpha_rule;   // n >= 1
    std::function<double(long)> lambda_rule;  // n >= 1

    /// Upper relaxation bound
    ///   (delta - alpha*[alpha*(1+alpha) + alpha*delta + sigma])
    ///   / (delta*[1 + alpha*(1+alpha) + alpha*delta + sigma]),
    /// guaranteed to lie in (0,1) for admissible parameters.
    double lambda_max() const;

    /// gamma_n = alpha_n*(1+alpha_n) + alpha_n*(1-lambda_n)*delta, the
    /// Lyapunov coefficient used by the mu diagnostic.
    double gamma_coeff(long n) const;

    /// Validates (alpha, sigma, delta) and returns lambda_max. Throws
    /// std::invalid_argument naming the minimal admissible delta on failure.
    static double validate(double alpha, double sigma, double delta);

    /// Minimal admissible delta (exclusive lower bound).
    static double delta_threshold(double alpha, double sigma);

    /// The delta maximizing lambda_max for given (alpha, sigma); returns 1
    /// for alpha = 0 where lambda_max does not depend on delta.
    static double best_delta(double alpha, double sigma);

    /// Constant schedule alpha_n = alpha for n >= 2 (alpha_1 = 0), delta =
    /// best_delta, lambda_n = lambda_max. Single exposed knob is alpha.
    static InertialSchedule km_defaults(double alpha, double sigma = 1e-6);

    /// As km_defaults but with lambda_n = 2*lambda_max*(1 - 1e-9), the
    /// default for Douglas-Rachford-type updates.
    static InertialSchedule dr_defaults(double alpha, double sigma = 1e-6);

    /// Copy of this schedule with a constant relaxation.
    InertialSchedule with_lambda(double lambda) const;
};

} // namespace idrs

#endif
