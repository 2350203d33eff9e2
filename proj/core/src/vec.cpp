#include "idrs/vec.hpp"

#include <cmath>
#include <string>

namespace idrs {

bool all_finite(const std::vector<double>& entries) {
    for (double e : entries) {
        if (!std::isfinite(e)) return false;
    }
    return true;
}

RealVector::RealVector(std::vector<double> entries) : entries_(std::move(entries)) {
    if (!all_finite(entries_)) {
        throw std::invalid_argument("RealVector: non-finite entry");
    }
}

RealVector RealVector::zeros(std::size_t dim) {
    return RealVector(std::vector<double>(dim, 0.0));
}

RealVector RealVector::constant(std::size_t dim, double value) {
    return RealVector(std::vector<double>(dim, value));
}

namespace {

void require_same_dim(const RealVector& x, const RealVector& y, const char* op) {
    if (x.dim() != y.dim()) {
        throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                    std::to_string(x.dim()) + " vs " + std::to_string(y.dim()) + ")");
    }
}

} // namespace

double inner(const RealVector& x, const RealVector& y) {
    require_same_dim(x, y, "inner");
    double s = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i) s += x[i] * y[i];
    return s;
}

double norm_sq(const RealVector& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i) s += x[i] * x[i];
    return s;
}

double norm(const RealVector& x) { return std::sqrt(norm_sq(x)); }

double dist(const RealVector& x, const RealVector& y) {
    require_same_dim(x, y, "dist");
    double s = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i) {
        const double d = x[i] - y[i];
        s += d * d;
    }
    return std::sqrt(s);
}

RealVector affine_combine(double a, const RealVector& x, double b, const RealVector& y) {
    require_same_dim(x, y, "affine_combine");
    std::vector<double> out(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) out[i] = a * x[i] + b * y[i];
    return RealVector(std::move(out));
}

RealVector operator+(const RealVector& x, const RealVector& y) { return affine_combine(1.0, x, 1.0, y); }
RealVector operator-(const RealVector& x, const RealVector& y) { return affine_combine(1.0, x, -1.0, y); }

RealVector operator*(double a, const RealVector& x) {
    std::vector<double> out(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) out[i] = a * x[i];
    return RealVector(std::move(out));
}

std::pair<double, double> identity_check_eq1(const RealVector& x, const RealVector& y, double a) {
    require_same_dim(x, y, "identity_check_eq1");
    const double lhs = norm_sq(affine_combine(a, x, 1.0 - a, y)) + a * (1.0 - a) * norm_sq(x - y);
    const double rhs = a * norm_sq(x) + (1.0 - a) * norm_sq(y);
    return {lhs, rhs};
}

namespace {

void require_same_shape(const BlockVector& x, const BlockVector& y, const char* op) {
    if (x.block_count() != y.block_count()) {
        throw std::invalid_argument(std::string(op) + ": block count mismatch");
    }
}

} // namespace

double inner(const BlockVector& x, const BlockVector& y) {
    require_same_shape(x, y, "inner");
    double s = 0.0;
    for (std::size_t i = 0; i < x.block_count(); ++i) s += inner(x.block(i), y.block(i));
    return s;
}

double norm_sq(const BlockVector& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.block_count(); ++i) s += norm_sq(x.block(i));
    return s;
}

double norm(const BlockVector& x) { return std::sqrt(norm_sq(x)); }

BlockVector affine_combine(double a, const BlockVector& x, double b, const BlockVector& y) {
    require_same_shape(x, y, "affine_combine");
    std::vector<RealVector> out;
    out.reserve(x.block_count());
    for (std::size_t i = 0; i < x.block_count(); ++i) {
        out.push_back(affine_combine(a, x.block(i), b, y.block(i)));
    }
    return BlockVector(std::move(out));
}

} // namespace idrs
