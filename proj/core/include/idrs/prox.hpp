#ifndef IDRS_PROX_HPP
#define IDRS_PROX_HPP

#include <functional>
#include <memory>

#include "idrs/vec.hpp"

namespace idrs {

/// A convex function accessed through its proximal map. prox(gamma, x)
/// minimizes f(y) + (1/2*gamma)*||y - x||^2; eval (optional) returns f(x),
/// +inf allowed for indicators. When a closed-form conjugate is known it is
/// attached so conjugate proxes avoid the Moreau detour.
struct Proximable {
    std::function<RealVector(double, const RealVector&)> prox;
    std::function<double(const RealVector&)> eval;
    std::shared_ptr<const Proximable> conjugate;
};

/// f(y) = (1/2)*||y - u||^2; prox is (x + gamma*u)/(1 + gamma).
Proximable prox_sq_dist(RealVector u);

/// f(y) = (1/2)*||y||^2; self-conjugate, prox is x/(1 + gamma).
Proximable prox_sq_norm();

/// f(y) = w*||y||_2; prox is the block soft-threshold, zero branch included.
Proximable prox_norm2(double w);

/// f(y) = w*||y||_1; componentwise soft-threshold.
Proximable prox_norm1(double w);

/// Indicator of the box [lo, hi]; prox is the componentwise clamp.
Proximable project_box(RealVector lo, RealVector hi);

/// Indicator of the closed ball B(center, radius); prox is the radial projection.
Proximable project_ball(RealVector center, double radius);

/// f = 0; prox is the identity. Conjugate is the indicator of the origin.
Proximable zero_function();

/// Indicator of {0}; prox is the constant-zero map. Conjugate is the zero function.
Proximable indicator_zero();

/// Moreau decomposition: prox of f* computed as x - gamma*base.prox(1/gamma, x/gamma).
Proximable prox_conjugate(const Proximable& base);

/// Explicit conjugate when attached, Moreau form otherwise.
Proximable conjugate_of(const Proximable& base);

/// Single conjugate-prox application without constructing a Proximable.
RealVector conj_prox_apply(const Proximable& base, double gamma, const RealVector& x);

/// f(. - r); prox(gamma, x) = r + base.prox(gamma, x - r).
Proximable prox_translate(const Proximable& base, RealVector r);

/// Fixed-parameter resolvent J_{gamma A}(x) = prox(gamma, x).
struct Resolvent {
    Proximable base;
    double gamma = 1.0;
    RealVector operator()(const RealVector& x) const { return base.prox(gamma, x); }
};

/// Reflected resolvent R_{gamma A} = 2*J_{gamma A} - id.
struct ReflectedResolvent {
    Proximable base;
    double gamma = 1.0;
    RealVector operator()(const RealVector& x) const;
};

Resolvent resolvent(const Proximable& base, double gamma);
ReflectedResolvent reflected(const Proximable& base, double gamma);

} // namespace idrs

#endif
