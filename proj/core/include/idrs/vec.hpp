#ifndef IDRS_VEC_HPP
#define IDRS_VEC_HPP

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace idrs {

/// Thrown by solver loops when an iterate or operator output turns non-finite.
class DivergedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense vector with 64-bit entries. Entries are validated to be finite at
/// construction; instances are immutable values afterwards.
class RealVector {
public:
    RealVector() = default;
    explicit RealVector(std::vector<double> entries);

    static RealVector zeros(std::size_t dim);
    static RealVector constant(std::size_t dim, double value);

    std::size_t dim() const { return entries_.size(); }
    double operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<double>& entries() const { return entries_; }

    bool operator==(const RealVector& other) const = default;

private:
    std::vector<double> entries_;
};

bool all_finite(const std::vector<double>& entries);

/// Euclidean inner product. Dimensions must agree.
double inner(const RealVector& x, const RealVector& y);
double norm_sq(const RealVector& x);
double norm(const RealVector& x);
double dist(const RealVector& x, const RealVector& y);

/// a*x + b*y, elementwise.
RealVector affine_combine(double a, const RealVector& x, double b, const RealVector& y);

RealVector operator+(const RealVector& x, const RealVector& y);
RealVector operator-(const RealVector& x, const RealVector& y);
RealVector operator*(double a, const RealVector& x);

/// Evaluates both sides of the norm identity
///   ||a*x + (1-a)*y||^2 + a*(1-a)*||x-y||^2 = a*||x||^2 + (1-a)*||y||^2
/// and returns them as (lhs, rhs). Used as a test oracle.
std::pair<double, double> identity_check_eq1(const RealVector& x, const RealVector& y, double a);

/// Product-space element: block 0 lives in the primal space, blocks 1..m in
/// the dual factors. Inner product is the sum of blockwise inner products.
class BlockVector {
public:
    BlockVector() = default;
    explicit BlockVector(std::vector<RealVector> blocks) : blocks_(std::move(blocks)) {}

    std::size_t block_count() const { return blocks_.size(); }
    const RealVector& block(std::size_t i) const { return blocks_[i]; }
    const std::vector<RealVector>& blocks() const { return blocks_; }

private:
    std::vector<RealVector> blocks_;
};

double inner(const BlockVector& x, const BlockVector& y);
double norm_sq(const BlockVector& x);
double norm(const BlockVector& x);
BlockVector affine_combine(double a, const BlockVector& x, double b, const BlockVector& y);

} // namespace idrs

#endif
