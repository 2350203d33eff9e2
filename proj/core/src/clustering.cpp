#include "idrs/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

namespace idrs {

std::vector<RealVector> gen_half_moons(std::uint64_t seed, int per_moon, double noise) {
    if (per_moon < 1) throw std::invalid_argument("gen_half_moons: per_moon must be >= 1");
    if (noise < 0.0) throw std::invalid_argument("gen_half_moons: noise must be nonnegative");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, noise > 0.0 ? noise : 1.0);
    auto jitter = [&]() { return noise > 0.0 ? gauss(rng) : 0.0; };

    std::vector<RealVector> pts;
    pts.reserve(2 * static_cast<std::size_t>(per_moon));
    for (int k = 0; k < per_moon; ++k) {
        const double t = per_moon == 1 ? 0.0 : std::numbers::pi * k / (per_moon - 1);
        pts.push_back(RealVector({std::cos(t) + jitter(), std::sin(t) + jitter()}));
    }
    for (int k = 0; k < per_moon; ++k) {
        const double t = per_moon == 1 ? 0.0 : std::numbers::pi * k / (per_moon - 1);
        pts.push_back(RealVector({1.0 - std::cos(t) + jitter(), 0.5 - std::sin(t) + jitter()}));
    }
    return pts;
}

std::vector<WeightedEdge> knn_weights(const std::vector<RealVector>& points, int K, double phi) {
    const std::size_t m = points.size();
    if (K < 1) throw std::invalid_argument("knn_weights: K must be >= 1");
    if (phi < 0.0) throw std::invalid_argument("knn_weights: phi must be nonnegative");
    if (static_cast<std::size_t>(K) >= m) {
        throw std::invalid_argument("knn_weights: K must be smaller than the point count");
    }

    // Symmetric OR of the K-nearest-neighbor relations.
    std::vector<std::vector<bool>> linked(m, std::vector<bool>(m, false));
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::iota(order.begin(), order.end(), 0);
        std::vector<double> d(m);
        for (std::size_t j = 0; j < m; ++j) {
            d[j] = j == i ? std::numeric_limits<double>::infinity() : norm_sq(points[i] - points[j]);
        }
        std::partial_sort(order.begin(), order.begin() + K, order.end(),
                          [&](std::size_t a, std::size_t b) {
                              return d[a] < d[b] || (d[a] == d[b] && a < b);
                          });
        for (int k = 0; k < K; ++k) {
            const std::size_t j = order[k];
            linked[std::min(i, j)][std::max(i, j)] = true;
        }
    }

    std::vector<WeightedEdge> edges;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (!linked[i][j]) continue;
            edges.push_back({i, j, std::exp(-phi * norm_sq(points[i] - points[j]))});
        }
    }
    return edges;  // (i,j) loops produce lexicographic order
}

ClusteringInstance make_clustering_instance(std::vector<RealVector> points, int p, double gamma,
                                            int K, double phi) {
    if (p != 1 && p != 2) throw std::invalid_argument("make_clustering_instance: p must be 1 or 2");
    if (gamma < 0.0) throw std::invalid_argument("make_clustering_instance: gamma must be nonnegative");
    ClusteringInstance inst;
    inst.edges = knn_weights(points, K, phi);
    inst.points = std::move(points);
    inst.p = p;
    inst.gamma = gamma;
    inst.K = K;
    inst.phi = phi;
    return inst;
}

RealVector stack_points(const std::vector<RealVector>& points) {
    std::vector<double> out;
    for (const auto& pt : points) {
        out.insert(out.end(), pt.entries().begin(), pt.entries().end());
    }
    return RealVector(std::move(out));
}

LinearMap difference_map(std::size_t n_points, std::size_t dim,
                         const std::vector<WeightedEdge>& edges) {
    const std::size_t in = n_points * dim;
    const std::size_t out = edges.size() * dim;
    auto fwd = [edges, dim, in, out](const RealVector& x) {
        std::vector<double> y(out);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            for (std::size_t d = 0; d < dim; ++d) {
                y[e * dim + d] = x[edges[e].i * dim + d] - x[edges[e].j * dim + d];
            }
        }
        return RealVector(std::move(y));
    };
    auto adj = [edges, dim, in](const RealVector& y) {
        std::vector<double> x(in, 0.0);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            for (std::size_t d = 0; d < dim; ++d) {
                x[edges[e].i * dim + d] += y[e * dim + d];
                x[edges[e].j * dim + d] -= y[e * dim + d];
            }
        }
        return RealVector(std::move(x));
    };
    return LinearMap{in, out, std::move(fwd), std::move(adj), std::nullopt};
}

namespace {

// Separable fusion penalty over stacked edge blocks,
// g(y) = gamma * sum_e w_e * ||y_e||_p. The conjugate is the indicator of the
// product of dual-norm balls of radii gamma*w_e, so its prox projects each
// edge block independently of the prox parameter.
Proximable fusion_penalty(const ClusteringInstance& inst) {
    const auto edges = inst.edges;
    const std::size_t dim = inst.point_dim();
    const double gamma = inst.gamma;
    const int p = inst.p;

    Proximable g;
    g.prox = [edges, dim, gamma, p](double gp, const RealVector& y) {
        std::vector<double> out(y.entries());
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const double t = gp * gamma * edges[e].weight;
            double* blk = out.data() + e * dim;
            if (p == 2) {
                double ns = 0.0;
                for (std::size_t d = 0; d < dim; ++d) ns += blk[d] * blk[d];
                const double n2 = std::sqrt(ns);
                const double scale = n2 <= t ? 0.0 : 1.0 - t / n2;
                for (std::size_t d = 0; d < dim; ++d) blk[d] *= scale;
            } else {
                for (std::size_t d = 0; d < dim; ++d) {
                    if (blk[d] > t) blk[d] -= t;
                    else if (blk[d] < -t) blk[d] += t;
                    else blk[d] = 0.0;
                }
            }
        }
        return RealVector(std::move(out));
    };
    g.eval = [edges, dim, gamma, p](const RealVector& y) {
        double s = 0.0;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const double* blk = y.entries().data() + e * dim;
            double v = 0.0;
            if (p == 2) {
                for (std::size_t d = 0; d < dim; ++d) v += blk[d] * blk[d];
                v = std::sqrt(v);
            } else {
                for (std::size_t d = 0; d < dim; ++d) v += std::abs(blk[d]);
            }
            s += edges[e].weight * v;
        }
        return gamma * s;
    };
    auto conj = std::make_shared<Proximable>();
    conj->prox = [edges, dim, gamma, p](double, const RealVector& y) {
        std::vector<double> out(y.entries());
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const double radius = gamma * edges[e].weight;
            double* blk = out.data() + e * dim;
            if (p == 2) {
                double ns = 0.0;
                for (std::size_t d = 0; d < dim; ++d) ns += blk[d] * blk[d];
                const double n2 = std::sqrt(ns);
                if (n2 > radius) {
                    const double scale = radius / n2;
                    for (std::size_t d = 0; d < dim; ++d) blk[d] *= scale;
                }
            } else {
                // dual of ||.||_1 is ||.||_inf
                for (std::size_t d = 0; d < dim; ++d) blk[d] = std::clamp(blk[d], -radius, radius);
            }
        }
        return RealVector(std::move(out));
    };
    g.conjugate = std::move(conj);
    return g;
}

} // namespace

PrimalDualProblem build_clustering_problem(const ClusteringInstance& inst) {
    if (inst.edges.empty()) {
        throw std::invalid_argument("build_clustering_problem: empty edge set (no coupling)");
    }
    const std::size_t dim = inst.point_dim();
    const std::size_t n_pts = inst.points.size();

    LinearMap L = difference_map(n_pts, dim, inst.edges);
    const OpNormEstimate est = op_norm_estimate(L, 1e-9, 5000, 0);
    L.norm_bound = est.value * 1.01;

    PrimalDualProblem prob;
    prob.f = prox_sq_dist(stack_points(inst.points));
    prob.z = RealVector::zeros(n_pts * dim);
    prob.blocks.push_back(PDBlock{fusion_penalty(inst), indicator_zero(), std::move(L),
                                  RealVector::zeros(inst.edges.size() * dim)});
    return prob;
}

double clustering_objective(const ClusteringInstance& inst, const RealVector& x) {
    const std::size_t dim = inst.point_dim();
    if (x.dim() != dim * inst.points.size()) {
        throw std::invalid_argument("clustering_objective: dimension mismatch");
    }
    double fit = 0.0;
    for (std::size_t i = 0; i < inst.points.size(); ++i) {
        for (std::size_t d = 0; d < dim; ++d) {
            const double r = x[i * dim + d] - inst.points[i][d];
            fit += r * r;
        }
    }
    double pen = 0.0;
    for (const auto& e : inst.edges) {
        double v = 0.0;
        if (inst.p == 2) {
            for (std::size_t d = 0; d < dim; ++d) {
                const double r = x[e.i * dim + d] - x[e.j * dim + d];
                v += r * r;
            }
            v = std::sqrt(v);
        } else {
            for (std::size_t d = 0; d < dim; ++d) {
                v += std::abs(x[e.i * dim + d] - x[e.j * dim + d]);
            }
        }
        pen += e.weight * v;
    }
    return 0.5 * fit + inst.gamma * pen;
}

std::vector<int> cluster_labels(const RealVector& stacked, std::size_t dim, double tol) {
    if (dim == 0 || stacked.dim() % dim != 0) {
        throw std::invalid_argument("cluster_labels: bad dimension");
    }
    const std::size_t m = stacked.dim() / dim;
    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            double ds = 0.0;
            for (std::size_t d = 0; d < dim; ++d) {
                const double r = stacked[i * dim + d] - stacked[j * dim + d];
                ds += r * r;
            }
            if (std::sqrt(ds) <= tol) parent[find(i)] = find(j);
        }
    }
    std::vector<int> labels(m, -1);
    int next = 0;
    std::vector<int> root_label(m, -1);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t r = find(i);
        if (root_label[r] < 0) root_label[r] = next++;
        labels[i] = root_label[r];
    }
    return labels;
}

int count_clusters(const RealVector& stacked, std::size_t dim, double tol) {
    const auto labels = cluster_labels(stacked, dim, tol);
    return labels.empty() ? 0 : 1 + *std::max_element(labels.begin(), labels.end());
}

} // namespace idrs
