#include "idrs/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace idrs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_gamma(double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("prox: gamma must be positive");
}

} // namespace

Proximable prox_sq_dist(RealVector u) {
    Proximable f;
    f.prox = [u](double gamma, const RealVector& x) {
        require_gamma(gamma);
        if (x.dim() != u.dim()) throw std::invalid_argument("prox_sq_dist: dimension mismatch");
        std::vector<double> out(x.dim());
        for (std::size_t i = 0; i < x.dim(); ++i) out[i] = (x[i] + gamma * u[i]) / (1.0 + gamma);
        return RealVector(std::move(out));
    };
    f.eval = [u](const RealVector& x) { return 0.5 * norm_sq(x - u); };
    // f*(y) = (1/2)*||y||^2 + <u, y>, prox is (x - gamma*u)/(1 + gamma).
    auto conj = std::make_shared<Proximable>();
    conj->prox = [u](double gamma, const RealVector& x) {
        require_gamma(gamma);
        std::vector<double> out(x.dim());
        for (std::size_t i = 0; i < x.dim(); ++i) out[i] = (x[i] - gamma * u[i]) / (1.0 + gamma);
        return RealVector(std::move(out));
    };
    f.conjugate = std::move(conj);
    return f;
}

Proximable prox_sq_norm() {
    Proximable f;
    f.prox = [](double gamma, const RealVector& x) {
        require_gamma(gamma);
        return (1.0 / (1.0 + gamma)) * x;
    };
    f.eval = [](const RealVector& x) { return 0.5 * norm_sq(x); };
    f.conjugate = std::make_shared<Proximable>(f);  // self-conjugate
    return f;
}

Proximable prox_norm2(double w) {
    if (!(w > 0.0)) throw std::invalid_argument("prox_norm2: weight must be positive");
    Proximable f;
    f.prox = [w](double gamma, const RealVector& x) {
        require_gamma(gamma);
        const double t = gamma * w;
        const double nx = norm(x);
        if (nx <= t) return RealVector::zeros(x.dim());
        return (1.0 - t / nx) * x;
    };
    f.eval = [w](const RealVector& x) { return w * norm(x); };
    f.conjugate = std::make_shared<Proximable>(project_ball(RealVector::zeros(0), w));
    return f;
}

Proximable prox_norm1(double w) {
    if (!(w > 0.0)) throw std::invalid_argument("prox_norm1: weight must be positive");
    Proximable f;
    f.prox = [w](double gamma, const RealVector& x) {
        require_gamma(gamma);
        const double t = gamma * w;
        std::vector<double> out(x.dim());
        for (std::size_t i = 0; i < x.dim(); ++i) {
            if (x[i] > t) out[i] = x[i] - t;
            else if (x[i] < -t) out[i] = x[i] + t;
            else out[i] = 0.0;
        }
        return RealVector(std::move(out));
    };
    f.eval = [w](const RealVector& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.dim(); ++i) s += std::abs(x[i]);
        return w * s;
    };
    // Conjugate is the indicator of the sup-norm ball of radius w.
    auto conj = std::make_shared<Proximable>();
    conj->prox = [w](double, const RealVector& x) {
        std::vector<double> out(x.dim());
        for (std::size_t i = 0; i < x.dim(); ++i) out[i] = std::clamp(x[i], -w, w);
        return RealVector(std::move(out));
    };
    conj->eval = [w](const RealVector& x) {
        for (std::size_t i = 0; i < x.dim(); ++i) {
            if (std::abs(x[i]) > w + 1e-12) return kInf;
        }
        return 0.0;
    };
    f.conjugate = std::move(conj);
    return f;
}

Proximable project_box(RealVector lo, RealVector hi) {
    if (lo.dim() != hi.dim()) throw std::invalid_argument("project_box: dimension mismatch");
    for (std::size_t i = 0; i < lo.dim(); ++i) {
        if (lo[i] > hi[i]) throw std::invalid_argument("project_box: lo > hi");
    }
    Proximable f;
    f.prox = [lo, hi](double, const RealVector& x) {
        if (x.dim() != lo.dim()) throw std::invalid_argument("project_box: dimension mismatch");
        std::vector<double> out(x.dim());
        for (std::size_t i = 0; i < x.dim(); ++i) out[i] = std::clamp(x[i], lo[i], hi[i]);
        return RealVector(std::move(out));
    };
    f.eval = [lo, hi](const RealVector& x) {
        for (std::size_t i = 0; i < x.dim(); ++i) {
            if (x[i] < lo[i] - 1e-12 || x[i] > hi[i] + 1e-12) return kInf;
        }
        return 0.0;
    };
    return f;
}

Proximable project_ball(RealVector center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("project_ball: radius must be positive");
    Proximable f;
    // An empty center stands for the origin in any dimension.
    f.prox = [center, radius](double, const RealVector& x) {
        if (center.dim() != 0 && x.dim() != center.dim()) {
            throw std::invalid_argument("project_ball: dimension mismatch");
        }
        const RealVector c = center.dim() == 0 ? RealVector::zeros(x.dim()) : center;
        const RealVector d = x - c;
        const double nd = norm(d);
        if (nd <= radius) return x;
        return c + (radius / nd) * d;
    };
    f.eval = [center, radius](const RealVector& x) {
        const RealVector c = center.dim() == 0 ? RealVector::zeros(x.dim()) : center;
        return dist(x, c) <= radius + 1e-12 ? 0.0 : kInf;
    };
    return f;
}

Proximable zero_function() {
    Proximable f;
    f.prox = [](double, const RealVector& x) { return x; };
    f.eval = [](const RealVector&) { return 0.0; };
    auto conj = std::make_shared<Proximable>();
    conj->prox = [](double, const RealVector& x) { return RealVector::zeros(x.dim()); };
    conj->eval = [](const RealVector& x) { return norm(x) <= 1e-12 ? 0.0 : kInf; };
    f.conjugate = std::move(conj);
    return f;
}

Proximable indicator_zero() {
    Proximable f;
    f.prox = [](double, const RealVector& x) { return RealVector::zeros(x.dim()); };
    f.eval = [](const RealVector& x) { return norm(x) <= 1e-12 ? 0.0 : kInf; };
    auto conj = std::make_shared<Proximable>(zero_function());
    conj->conjugate.reset();
    f.conjugate = std::move(conj);
    return f;
}

Proximable prox_conjugate(const Proximable& base) {
    Proximable f;
    f.prox = [base](double gamma, const RealVector& x) {
        require_gamma(gamma);
        return x - gamma * base.prox(1.0 / gamma, (1.0 / gamma) * x);
    };
    return f;
}

Proximable conjugate_of(const Proximable& base) {
    if (base.conjugate) return *base.conjugate;
    return prox_conjugate(base);
}

RealVector conj_prox_apply(const Proximable& base, double gamma, const RealVector& x) {
    require_gamma(gamma);
    if (base.conjugate) return base.conjugate->prox(gamma, x);
    return x - gamma * base.prox(1.0 / gamma, (1.0 / gamma) * x);
}

Proximable prox_translate(const Proximable& base, RealVector r) {
    Proximable f;
    f.prox = [base, r](double gamma, const RealVector& x) {
        if (x.dim() != r.dim()) throw std::invalid_argument("prox_translate: dimension mismatch");
        return r + base.prox(gamma, x - r);
    };
    if (base.eval) {
        f.eval = [base, r](const RealVector& x) { return base.eval(x - r); };
    }
    if (base.conjugate) {
        // (f(.-r))* = f* + <r,.>, so its prox shifts the argument by gamma*r.
        auto conj = std::make_shared<Proximable>();
        auto basec = base.conjugate;
        conj->prox = [basec, r](double gamma, const RealVector& x) {
            return basec->prox(gamma, x - gamma * r);
        };
        f.conjugate = std::move(conj);
    }
    return f;
}

RealVector ReflectedResolvent::operator()(const RealVector& x) const {
    return affine_combine(2.0, base.prox(gamma, x), -1.0, x);
}

Resolvent resolvent(const Proximable& base, double gamma) {
    require_gamma(gamma);
    return Resolvent{base, gamma};
}

ReflectedResolvent reflected(const Proximable& base, double gamma) {
    require_gamma(gamma);
    return ReflectedResolvent{base, gamma};
}

} // namespace idrs
