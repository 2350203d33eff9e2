#ifndef IDRS_HERON_HPP
#define IDRS_HERON_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "idrs/primal_dual.hpp"

namespace idrs {

struct Box {
    RealVector lo;
    RealVector hi;
};

/// Generalized Heron instance: minimize the sum of distances to m axis-aligned
/// unit boxes over the unit ball centered at (1,...,1). Box centers are drawn
/// from N(0, n^2) with a seeded generator.
struct HeronInstance {
    int dim = 2;
    RealVector ball_center;
    double ball_radius = 1.0;
    std::vector<Box> boxes;
    std::uint64_t seed = 0;
};

HeronInstance make_heron_instance(int n, int m, std::uint64_t seed);

/// Primal-dual form: f the ball indicator, per box the block
/// g_i = ||.||_2 (conjugate prox: projection onto the unit ball),
/// l_i the box indicator (conjugate prox via the Moreau identity),
/// L_i the identity.
PrimalDualProblem build_heron_problem(const HeronInstance& inst);

/// sum_i d(x; Omega_i); the ball constraint is not included in the value.
double heron_objective(const HeronInstance& inst, const RealVector& x);

struct SubgradResult {
    RealVector x;
    SolveReport report;
};

/// Projected subgradient baseline:
///   x_{k+1} = P_Omega(x_k - t_k * sum_i s_i),
///   s_i = (x_k - P_i x_k)/d(x_k; Omega_i) when the distance exceeds 1e-12,
/// starting from the ball center and returning the best iterate by objective.
/// The trace's fp_residual column records the step norm ||x_{k+1} - x_k||.
SubgradResult heron_subgradient(const HeronInstance& inst, const std::function<double(long)>& step,
                                const StopRule& stop);

/// Diminishing steps t_k = c/k.
std::function<double(long)> diminishing_steps(double c);

} // namespace idrs

#endif
