#ifndef IDRS_REPORT_HPP
#define IDRS_REPORT_HPP

#include <filesystem>
#include <optional>
#include <string>

#include "idrs/clustering.hpp"
#include "idrs/heron.hpp"
#include "idrs/primal_dual.hpp"
#include "idrs/trace.hpp"

namespace idrs {

/// One experiment cell: who ran, how long, and the recorded traces.
struct RunReport {
    std::string algorithm_tag;
    long iterations = 0;
    std::vector<double> rmse_trace;
    std::vector<double> residual_trace;
    std::vector<double> objective_trace;
    double objective_final = 0.0;
    double wall_time_s = 0.0;
    bool converged = false;
};

/// FNV-1a hash of raw bytes; used to key cached reference solutions.
std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t h = 1469598103934665603ull);
std::string clustering_cache_key(const ClusteringInstance& inst);
std::string heron_cache_key(const HeronInstance& inst);

/// Vector (de)serialization for the reference cache. Binary little-endian:
/// 8-byte magic "IDRSREF1", u64 dimension, then the entries as f64.
std::optional<RealVector> load_cached_vector(const std::filesystem::path& file);
void store_cached_vector(const std::filesystem::path& file, const RealVector& v);

/// High-accuracy primal solution for RMSE stopping: the non-inertial
/// primal-dual run with default step sizes until the product-space step norm
/// drops below 1e-13 (at most 1e7 iterations, error beyond that). Results are
/// cached on disk under `cache_dir/<key>.ref`; a cached hit is returned
/// bit-identically.
RealVector reference_solution(const PrimalDualProblem& problem, const std::string& key,
                              const std::filesystem::path& cache_dir);

/// Per-iteration trace with the fixed schema "n,rmse,fp_residual,objective";
/// written atomically (temp file + rename). Missing columns are filled with 0.
void write_trace_csv(const std::filesystem::path& file, const RunReport& report);

/// Shortest round-trip decimal form of a double (deterministic output files).
std::string format_double(double v);

} // namespace idrs

#endif
