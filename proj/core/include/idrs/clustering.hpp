#ifndef IDRS_CLUSTERING_HPP
#define IDRS_CLUSTERING_HPP

#include <cstdint>
#include <vector>

#include "idrs/primal_dual.hpp"

namespace idrs {

/// Nearest-neighbor coupling between points i < j with a positive weight.
struct WeightedEdge {
    std::size_t i = 0;
    std::size_t j = 0;
    double weight = 0.0;
};

/// Two interlocking half moons in R^2: the upper arc (cos t, sin t) and the
/// lower arc (1 - cos t, 1/2 - sin t), t in [0, pi], each sampled per_moon
/// times, plus additive Gaussian noise of the given standard deviation from
/// a seeded generator. Deterministic for a fixed seed.
std::vector<RealVector> gen_half_moons(std::uint64_t seed, int per_moon, double noise);

/// Exponentially decayed K-nearest-neighbor weights
/// w_ij = exp(-phi*||u_i - u_j||^2) whenever j is among i's K nearest
/// neighbors or vice versa. Edges are returned sorted lexicographically.
std::vector<WeightedEdge> knn_weights(const std::vector<RealVector>& points, int K, double phi);

/// Sum-of-norms clustering instance:
/// min over centers x_i of
///   (1/2) sum_i ||x_i - u_i||^2 + gamma * sum_{i<j} w_ij*||x_i - x_j||_p.
struct ClusteringInstance {
    std::vector<RealVector> points;
    int p = 2;  // 1 or 2
    double gamma = 5.2;
    int K = 10;
    double phi = 0.5;
    std::vector<WeightedEdge> edges;

    std::size_t point_dim() const { return points.empty() ? 0 : points.front().dim(); }
};

ClusteringInstance make_clustering_instance(std::vector<RealVector> points, int p, double gamma,
                                            int K, double phi);

/// Stack points into one vector of length m*n (point-major).
RealVector stack_points(const std::vector<RealVector>& points);

/// Primal-dual form: f(x) = (1/2)||x - u||^2 with one coupling block holding
/// the stacked pairwise-difference operator and the separable weighted p-norm
/// penalty. The operator norm is certified by power iteration on the edge
/// Gram (the unweighted graph Laplacian) with a 1.01 safety factor.
PrimalDualProblem build_clustering_problem(const ClusteringInstance& inst);

/// Objective value at stacked centers x.
double clustering_objective(const ClusteringInstance& inst, const RealVector& x);

/// The stacked pairwise-difference operator of the instance's edge list.
LinearMap difference_map(std::size_t n_points, std::size_t dim, const std::vector<WeightedEdge>& edges);

/// Number of distinct centers after merging at tolerance tol (union-find over
/// all pairs).
int count_clusters(const RealVector& stacked, std::size_t dim, double tol);

/// Merge labels (0-based, in order of first occurrence).
std::vector<int> cluster_labels(const RealVector& stacked, std::size_t dim, double tol);

} // namespace idrs

#endif
