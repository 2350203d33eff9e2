#include "idrs/schedule.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace idrs {

double InertialSchedule::delta_threshold(double alpha, double sigma) {
    return (alpha * alpha * (1.0 + alpha) + alpha * sigma) / (1.0 - alpha * alpha);
}

double InertialSchedule::validate(double alpha, double sigma, double delta) {
    if (!(alpha >= 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("schedule: alpha must lie in [0,1), got " + std::to_string(alpha));
    }
    if (!(sigma > 0.0)) throw std::invalid_argument("schedule: sigma must be positive");
    if (!(delta > 0.0)) throw std::invalid_argument("schedule: delta must be positive");
    const double thr = delta_threshold(alpha, sigma);
    if (!(delta > thr)) {
        throw std::invalid_argument("schedule: delta = " + std::to_string(delta) +
                                    " must exceed (alpha^2*(1+alpha)+alpha*sigma)/(1-alpha^2) = " +
                                    std::to_string(thr));
    }
    const double c = alpha * (1.0 + alpha) + alpha * delta + sigma;
    return (delta - alpha * c) / (delta * (1.0 + c));
}

double InertialSchedule::lambda_max() const { return validate(alpha, sigma, delta); }

double InertialSchedule::gamma_coeff(long n) const {
    const double an = alpha_rule(n);
    const double ln = lambda_rule(n);
    return an * (1.0 + an) + an * (1.0 - ln) * delta;
}

double InertialSchedule::best_delta(double alpha, double sigma) {
    if (alpha == 0.0) return 1.0;  // lambda_max = 1/(1+sigma) regardless of delta
    const double b = alpha * (1.0 + alpha) + sigma;
    const double one_m_a2 = 1.0 - alpha * alpha;
    return (alpha * b + std::sqrt(alpha * alpha * b * b + one_m_a2 * b * (1.0 + b))) / one_m_a2;
}

namespace {

InertialSchedule make_defaults(double alpha, double sigma, double lambda_factor) {
    InertialSchedule s;
    s.alpha = alpha;
    s.sigma = sigma;
    s.delta = InertialSchedule::best_delta(alpha, sigma);
    const double lam = InertialSchedule::validate(alpha, sigma, s.delta) * lambda_factor;
    s.lambda_lo = lam;
    s.alpha_rule = [alpha](long n) { return n == 1 ? 0.0 : alpha; };
    s.lambda_rule = [lam](long) { return lam; };
    return s;
}

} // namespace

InertialSchedule InertialSchedule::km_defaults(double alpha, double sigma) {
    return make_defaults(alpha, sigma, 1.0);
}

InertialSchedule InertialSchedule::dr_defaults(double alpha, double sigma) {
    return make_defaults(alpha, sigma, 2.0 * (1.0 - 1e-9));
}

InertialSchedule InertialSchedule::with_lambda(double lambda) const {
    if (!(lambda > 0.0)) throw std::invalid_argument("schedule: lambda must be positive");
    InertialSchedule s = *this;
    s.lambda_lo = lambda;
    s.lambda_rule = [lambda](long) { return lambda; };
    return s;
}

} // namespace idrs
