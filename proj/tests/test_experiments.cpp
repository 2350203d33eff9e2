#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "idrs/clustering.hpp"
#include "idrs/heron.hpp"
#include "idrs/report.hpp"
#include "test_util.hpp"

using namespace idrs;

namespace {

ClusteringInstance micro_chain(double gamma) {
    return make_clustering_instance({RealVector({0.0}), RealVector({1.0}), RealVector({3.0})}, 2,
                                    gamma, 1, 0.5);
}

// Exact minimizer of (1/2)sum (x_i - u_i)^2 + w1*|x1 - x2| + w2*|x2 - x3| by
// enumerating the sign/fuse patterns of the two coupling terms; the
// subdifferential conditions certify the unique optimum.
std::array<double, 3> fused_chain_exact(double u1, double u2, double u3, double w1, double w2) {
    constexpr double tol = 1e-12;
    for (double s1 : {-1.0, 1.0}) {
        for (double s2 : {-1.0, 1.0}) {
            const double x1 = u1 - w1 * s1;
            const double x2 = u2 + w1 * s1 - w2 * s2;
            const double x3 = u3 + w2 * s2;
            if (s1 * (x1 - x2) > tol && s2 * (x2 - x3) > tol) return {x1, x2, x3};
        }
    }
    for (double s2 : {-1.0, 1.0}) {  // x1 = x2 = t
        const double t = 0.5 * (u1 + u2 - w2 * s2);
        const double x3 = u3 + w2 * s2;
        if (std::abs(u1 - t) <= w1 + tol && s2 * (t - x3) > tol) return {t, t, x3};
    }
    for (double s1 : {-1.0, 1.0}) {  // x2 = x3 = t
        const double t = 0.5 * (u2 + u3 + w1 * s1);
        const double x1 = u1 - w1 * s1;
        if (std::abs(t - u3) <= w2 + tol && s1 * (x1 - t) > tol) return {x1, t, t};
    }
    const double t = (u1 + u2 + u3) / 3.0;  // all fused
    return {t, t, t};
}

PDResult solve_clustering(const ClusteringInstance& inst, double stop_eps = 1e-12,
                          long max_iter = 200000) {
    const auto prob = build_clustering_problem(inst);
    return pd_solve(prob, pd_init(prob), default_stepsizes(prob),
                    InertialSchedule::dr_defaults(0.0).with_lambda(1.0),
                    StopRule::step_norm(stop_eps, max_iter));
}

} // namespace

TEST_CASE("gen_half_moons") {
    SUBCASE("two moons of 100 points") {
        CHECK(gen_half_moons(0, 100, 0.05).size() == 200);
    }
    SUBCASE("deterministic for a fixed seed") {
        const auto a = gen_half_moons(7, 20, 0.1);
        const auto b = gen_half_moons(7, 20, 0.1);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
        const auto c = gen_half_moons(8, 20, 0.1);
        CHECK(a[0] != c[0]);
    }
    SUBCASE("noise-free endpoints follow the arc parametrization") {
        const auto pts = gen_half_moons(0, 2, 0.0);
        REQUIRE(pts.size() == 4);
        CHECK(dist(pts[0], RealVector({1.0, 0.0})) <= 1e-15);
        CHECK(dist(pts[1], RealVector({-1.0, 0.0})) <= 1e-12);
        CHECK(dist(pts[2], RealVector({0.0, 0.5})) <= 1e-15);
        CHECK(dist(pts[3], RealVector({2.0, 0.5})) <= 1e-12);
    }
}

TEST_CASE("knn_weights") {
    const std::vector<RealVector> pts = {RealVector({0.0}), RealVector({1.0}), RealVector({3.0})};
    SUBCASE("collinear example with K = 1") {
        const auto edges = knn_weights(pts, 1, 0.5);
        REQUIRE(edges.size() == 2);
        CHECK(edges[0].i == 0);
        CHECK(edges[0].j == 1);
        CHECK(edges[0].weight == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
        CHECK(edges[1].i == 1);
        CHECK(edges[1].j == 2);
        CHECK(edges[1].weight == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    }
    SUBCASE("K = m-1 links all pairs") {
        CHECK(knn_weights(pts, 2, 0.5).size() == 3);
    }
    SUBCASE("phi = 0 gives unit weights") {
        for (const auto& e : knn_weights(pts, 2, 0.0)) CHECK(e.weight == 1.0);
    }
    SUBCASE("K >= point count is rejected") {
        CHECK_THROWS_AS(knn_weights(pts, 3, 0.5), std::invalid_argument);
    }
    SUBCASE("edges are sorted lexicographically") {
        std::mt19937_64 rng(10);
        std::vector<RealVector> cloud;
        for (int i = 0; i < 30; ++i) cloud.push_back(test::random_vector(rng, 2, 3.0));
        const auto edges = knn_weights(cloud, 4, 0.5);
        for (std::size_t e = 1; e < edges.size(); ++e) {
            CHECK((edges[e - 1].i < edges[e].i ||
                   (edges[e - 1].i == edges[e].i && edges[e - 1].j < edges[e].j)));
        }
    }
}

TEST_CASE("difference map norm equals the Laplacian spectral radius") {
    // Path graph on {0,1,3}: Laplacian eigenvalues {0,1,3}, so ||A|| = sqrt(3).
    const auto inst = micro_chain(1.0);
    const LinearMap A = difference_map(3, 1, inst.edges);
    const auto est = op_norm_estimate(A, 1e-12, 20000, 1);
    CHECK(est.converged);
    CHECK(est.value == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
    // and is bounded by sqrt(2 * max degree) = sqrt(4)
    CHECK(est.value <= std::sqrt(2.0 * 2.0) + 1e-9);
}

TEST_CASE("build_clustering_problem") {
    SUBCASE("gamma = 0 keeps every center at its point") {
        auto inst = micro_chain(0.0);
        auto res = solve_clustering(inst);
        CHECK(res.report.converged);
        CHECK(dist(res.solution.p1, stack_points(inst.points)) <= 1e-9);
    }
    SUBCASE("two points with a huge coupling coalesce at the mean") {
        auto inst = make_clustering_instance({RealVector({0.0, 0.0}), RealVector({2.0, 0.0})}, 2,
                                             10.0, 1, 0.5);
        auto res = solve_clustering(inst);
        CHECK(res.report.converged);
        CHECK(std::abs(res.solution.p1[0] - 1.0) <= 1e-8);
        CHECK(std::abs(res.solution.p1[2] - 1.0) <= 1e-8);
        CHECK(count_clusters(res.solution.p1, 2, 1e-3) == 1);
    }
    SUBCASE("empty edge set is rejected") {
        ClusteringInstance inst;
        inst.points = {RealVector({0.0}), RealVector({1.0})};
        CHECK_THROWS_AS(build_clustering_problem(inst), std::invalid_argument);
    }
}

TEST_CASE("micro instance matches the exact enumeration oracle") {
    for (double gamma : {0.4, 1.0, 2.5}) {
        CAPTURE(gamma);
        auto inst = micro_chain(gamma);
        const double w1 = gamma * inst.edges[0].weight;
        const double w2 = gamma * inst.edges[1].weight;
        const auto exact = fused_chain_exact(0.0, 1.0, 3.0, w1, w2);

        auto res = solve_clustering(inst);
        CHECK(res.report.converged);
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(res.solution.p1[static_cast<std::size_t>(i)] - exact[i]) <= 1e-5);
        }

        const double obj_sol = clustering_objective(inst, res.solution.p1);
        const double obj_oracle =
            clustering_objective(inst, RealVector({exact[0], exact[1], exact[2]}));
        CHECK(obj_sol <= obj_oracle + 1e-9);
        CHECK(obj_sol >= obj_oracle - 1e-9);
    }
}

TEST_CASE("gamma = 1 micro instance fuses the first two centers") {
    auto inst = micro_chain(1.0);
    const double w1 = inst.edges[0].weight;
    const double w2 = inst.edges[1].weight;
    const auto exact = fused_chain_exact(0.0, 1.0, 3.0, w1, w2);
    CHECK(exact[0] == exact[1]);
    CHECK(exact[0] == doctest::Approx(0.5 * (1.0 + std::exp(-2.0))).epsilon(1e-14));
    CHECK(exact[2] == doctest::Approx(3.0 - std::exp(-2.0)).epsilon(1e-14));
}

TEST_CASE("cluster label bookkeeping") {
    const RealVector centers({0.0, 0.0, 0.00001, 0.0, 5.0, 5.0});
    CHECK(count_clusters(centers, 2, 1e-3) == 2);
    const auto labels = cluster_labels(centers, 2, 1e-3);
    CHECK(labels == std::vector<int>({0, 0, 1}));
}

TEST_CASE("coalescence is nonincreasing over a gamma sweep") {
    const auto pts = gen_half_moons(0, 12, 0.05);
    int prev = static_cast<int>(pts.size()) + 1;
    for (double gamma : {0.05, 0.2, 0.8, 2.0, 6.0, 20.0}) {
        auto inst = make_clustering_instance(pts, 2, gamma, 3, 0.5);
        auto res = solve_clustering(inst, 1e-11);
        REQUIRE(res.report.converged);
        const int k = count_clusters(res.solution.p1, 2, 1e-3);
        CHECK(k <= prev);
        prev = k;
    }
    CHECK(prev == 1);
}

TEST_CASE("heron instance and problem construction") {
    SUBCASE("boxes have side length 1 and seeded determinism") {
        const auto a = make_heron_instance(3, 5, 42);
        const auto b = make_heron_instance(3, 5, 42);
        REQUIRE(a.boxes.size() == 5);
        for (std::size_t i = 0; i < 5; ++i) {
            for (int d = 0; d < 3; ++d) {
                CHECK(a.boxes[i].hi[d] - a.boxes[i].lo[d] == doctest::Approx(1.0).epsilon(1e-15));
                CHECK(a.boxes[i].lo[d] == b.boxes[i].lo[d]);
            }
        }
        CHECK(a.ball_center == RealVector({1.0, 1.0, 1.0}));
    }
    SUBCASE("all block norms are 1") {
        const auto prob = build_heron_problem(make_heron_instance(2, 4, 0));
        for (const auto& blk : prob.blocks) CHECK(*blk.L.norm_bound == 1.0);
    }
    SUBCASE("overlapping box gives objective 0") {
        HeronInstance inst;
        inst.dim = 2;
        inst.ball_center = RealVector({1.0, 1.0});
        inst.ball_radius = 1.0;
        inst.boxes = {Box{RealVector({0.5, 0.5}), RealVector({1.5, 1.5})}};
        CHECK(heron_objective(inst, inst.ball_center) == 0.0);
    }
}

TEST_CASE("heron subgradient baseline") {
    SUBCASE("stationary when the start lies in every box") {
        HeronInstance inst;
        inst.dim = 2;
        inst.ball_center = RealVector({1.0, 1.0});
        inst.ball_radius = 1.0;
        inst.boxes = {Box{RealVector({0.5, 0.5}), RealVector({1.5, 1.5})},
                      Box{RealVector({0.0, 0.0}), RealVector({2.0, 2.0})}};
        auto res = heron_subgradient(inst, diminishing_steps(1.0), StopRule::step_norm(1e-14, 100));
        CHECK(res.report.converged);
        CHECK(res.report.iterations == 1);
        CHECK(res.x == inst.ball_center);
    }
    SUBCASE("single faraway box: solution sits on the ball boundary towards the box") {
        HeronInstance inst;
        inst.dim = 2;
        inst.ball_center = RealVector({1.0, 1.0});
        inst.ball_radius = 1.0;
        inst.boxes = {Box{RealVector({7.5, 0.5}), RealVector({8.5, 1.5})}};
        auto res =
            heron_subgradient(inst, diminishing_steps(2.0), StopRule::iterations(200000));

        // independent oracle: alternate projections between ball and box
        RealVector a = inst.ball_center;
        const Proximable ball = project_ball(inst.ball_center, inst.ball_radius);
        const Proximable box = project_box(inst.boxes[0].lo, inst.boxes[0].hi);
        for (int t = 0; t < 200; ++t) a = ball.prox(1.0, box.prox(1.0, a));
        CHECK(dist(res.x, a) <= 1e-5);
        CHECK(std::abs(dist(res.x, inst.ball_center) - 1.0) <= 1e-6);
    }
}

TEST_CASE("rmse") {
    const RealVector x({3.0, 4.0}), zero({0.0, 0.0});
    CHECK(rmse(x, x) == 0.0);
    CHECK(rmse(x, zero) == doctest::Approx(std::sqrt(12.5)).epsilon(1e-15));
    CHECK(rmse(x, zero) == rmse(zero, x));
    CHECK_THROWS_AS(rmse(x, RealVector::zeros(3)), std::invalid_argument);
}

TEST_CASE("reference cache round trip") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "idrs-test-cache";
    fs::remove_all(dir);

    PrimalDualProblem prob;
    prob.f = zero_function();
    prob.z = RealVector::zeros(1);
    prob.blocks.push_back(PDBlock{prox_sq_norm(), indicator_zero(), identity_map(1),
                                  RealVector::zeros(1)});

    const RealVector first = reference_solution(prob, "toy", dir);
    CHECK(std::abs(first[0]) <= 1e-12);
    CHECK(fs::exists(dir / "toy.ref"));
    const RealVector second = reference_solution(prob, "toy", dir);
    CHECK(first == second);  // bitwise from cache

    SUBCASE("store/load round trip preserves bits") {
        const RealVector v({1.0 / 3.0, -2.718281828459045, 0.0});
        store_cached_vector(dir / "v.ref", v);
        const auto back = load_cached_vector(dir / "v.ref");
        REQUIRE(back.has_value());
        CHECK(*back == v);
    }
    SUBCASE("corrupt magic is rejected") {
        std::FILE* f = std::fopen((dir / "bad.ref").c_str(), "wb");
        std::fputs("NOTMAGIC", f);
        std::fclose(f);
        CHECK_FALSE(load_cached_vector(dir / "bad.ref").has_value());
    }
    fs::remove_all(dir);
}

TEST_CASE("objective consistency on the micro instance") {
    auto inst = micro_chain(1.0);
    const auto prob = build_clustering_problem(inst);
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "idrs-test-cache2";
    fs::remove_all(dir);
    const RealVector ref = reference_solution(prob, clustering_cache_key(inst), dir);
    fs::remove_all(dir);

    auto res = pd_solve(prob, pd_init(prob), default_stepsizes(prob),
                        InertialSchedule::dr_defaults(0.2), StopRule::rmse_to(ref, 1e-9, 100000));
    CHECK(res.report.converged);
    const double obj = clustering_objective(inst, res.solution.p1);
    const double obj0 = clustering_objective(inst, stack_points(inst.points));
    const double obj_ref = clustering_objective(inst, ref);
    CHECK(obj <= obj0 + 1e-12);
    CHECK(std::abs(obj - obj_ref) <= 1e-8 * (1.0 + std::abs(obj)));
}

TEST_CASE("trace csv schema") {
    namespace fs = std::filesystem;
    RunReport rep;
    rep.algorithm_tag = "x";
    rep.iterations = 2;
    rep.rmse_trace = {0.5, 0.25};
    rep.residual_trace = {1.0, 0.5};
    rep.objective_trace = {2.0, 1.5};
    const fs::path file = fs::temp_directory_path() / "idrs-trace-test.csv";
    write_trace_csv(file, rep);
    std::ifstream in(file);
    std::string line;
    std::getline(in, line);
    CHECK(line == "n,rmse,fp_residual,objective");
    std::getline(in, line);
    CHECK(line == "1,0.5,1,2");
    std::getline(in, line);
    CHECK(line == "2,0.25,0.5,1.5");
    fs::remove(file);
}
