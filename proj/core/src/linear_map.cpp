#include "idrs/linear_map.hpp"

#include <cmath>
#include <random>
#include <string>

namespace idrs {

RealVector LinearMap::apply(const RealVector& x) const {
    if (x.dim() != in_dim) {
        throw std::invalid_argument("LinearMap::apply: expected dim " + std::to_string(in_dim) +
                                    ", got " + std::to_string(x.dim()));
    }
    return forward(x);
}

RealVector LinearMap::apply_adjoint(const RealVector& y) const {
    if (y.dim() != out_dim) {
        throw std::invalid_argument("LinearMap::apply_adjoint: expected dim " + std::to_string(out_dim) +
                                    ", got " + std::to_string(y.dim()));
    }
    return adjoint(y);
}

LinearMap identity_map(std::size_t n) {
    auto id = [](const RealVector& x) { return x; };
    return LinearMap{n, n, id, id, 1.0};
}

LinearMap scaling_map(std::size_t n, double c) {
    auto fwd = [c](const RealVector& x) { return c * x; };
    return LinearMap{n, n, fwd, fwd, std::abs(c)};
}

LinearMap dense_map(std::vector<std::vector<double>> rows) {
    if (rows.empty() || rows.front().empty()) {
        throw std::invalid_argument("dense_map: empty matrix");
    }
    const std::size_t out = rows.size();
    const std::size_t in = rows.front().size();
    for (const auto& r : rows) {
        if (r.size() != in) throw std::invalid_argument("dense_map: ragged matrix");
    }
    auto fwd = [rows, in, out](const RealVector& x) {
        std::vector<double> y(out, 0.0);
        for (std::size_t i = 0; i < out; ++i) {
            for (std::size_t j = 0; j < in; ++j) y[i] += rows[i][j] * x[j];
        }
        return RealVector(std::move(y));
    };
    auto adj = [rows, in, out](const RealVector& y) {
        std::vector<double> x(in, 0.0);
        for (std::size_t i = 0; i < out; ++i) {
            for (std::size_t j = 0; j < in; ++j) x[j] += rows[i][j] * y[i];
        }
        return RealVector(std::move(x));
    };
    return LinearMap{in, out, std::move(fwd), std::move(adj), std::nullopt};
}

LinearMap pairwise_difference_map() {
    auto fwd = [](const RealVector& x) { return RealVector({x[0] - x[1]}); };
    auto adj = [](const RealVector& y) { return RealVector({y[0], -y[0]}); };
    return LinearMap{2, 1, std::move(fwd), std::move(adj), std::sqrt(2.0)};
}

OpNormEstimate op_norm_estimate(const LinearMap& L, double tol, long max_iter, std::uint64_t seed) {
    if (L.in_dim < 1) throw std::invalid_argument("op_norm_estimate: in_dim must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("op_norm_estimate: tol must be positive");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> start(L.in_dim);
    for (double& e : start) e = unif(rng);
    RealVector v(std::move(start));
    const double n0 = norm(v);
    if (n0 == 0.0) v = RealVector::constant(L.in_dim, 1.0);
    v = (1.0 / norm(v)) * v;

    double rayleigh = 0.0;
    for (long it = 1; it <= max_iter; ++it) {
        const RealVector w = L.apply_adjoint(L.apply(v));  // (L*L) v
        const double r = inner(v, w);                      // = ||L v||^2
        const double wn = norm(w);
        if (wn <= 1e-300) {
            return {0.0, true, it};  // L annihilates the iterate: norm 0
        }
        v = (1.0 / wn) * w;
        if (it > 1 && std::abs(r - rayleigh) <= tol * std::max(1.0, std::abs(r))) {
            return {std::sqrt(std::max(r, 0.0)), true, it};
        }
        rayleigh = r;
    }
    return {std::sqrt(std::max(rayleigh, 0.0)), false, max_iter};
}

} // namespace idrs
