#include "idrs/report.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace idrs {

double rmse(const RealVector& x, const RealVector& ref) {
    if (x.dim() != ref.dim()) throw std::invalid_argument("rmse: dimension mismatch");
    if (x.dim() == 0) return 0.0;
    return std::sqrt(norm_sq(x - ref) / static_cast<double>(x.dim()));
}

std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t h) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

std::uint64_t hash_doubles(std::uint64_t h, const std::vector<double>& v) {
    return fnv1a(v.data(), v.size() * sizeof(double), h);
}

std::uint64_t hash_u64(std::uint64_t h, std::uint64_t v) { return fnv1a(&v, sizeof(v), h); }

std::string hex(std::uint64_t h) {
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

} // namespace

std::string clustering_cache_key(const ClusteringInstance& inst) {
    std::uint64_t h = fnv1a("cluster", 7);
    h = hash_u64(h, static_cast<std::uint64_t>(inst.p));
    h = hash_u64(h, static_cast<std::uint64_t>(inst.K));
    h = hash_doubles(h, {inst.gamma, inst.phi});
    for (const auto& pt : inst.points) h = hash_doubles(h, pt.entries());
    for (const auto& e : inst.edges) {
        h = hash_u64(h, e.i);
        h = hash_u64(h, e.j);
        h = hash_doubles(h, {e.weight});
    }
    return "cluster-" + hex(h);
}

std::string heron_cache_key(const HeronInstance& inst) {
    std::uint64_t h = fnv1a("heron", 5);
    h = hash_u64(h, static_cast<std::uint64_t>(inst.dim));
    h = hash_u64(h, static_cast<std::uint64_t>(inst.boxes.size()));
    h = hash_doubles(h, inst.ball_center.entries());
    h = hash_doubles(h, {inst.ball_radius});
    for (const auto& b : inst.boxes) {
        h = hash_doubles(h, b.lo.entries());
        h = hash_doubles(h, b.hi.entries());
    }
    return "heron-" + hex(h);
}

namespace {
constexpr char kMagic[8] = {'I', 'D', 'R', 'S', 'R', 'E', 'F', '1'};
}

std::optional<RealVector> load_cached_vector(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) return std::nullopt;
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kMagic, 8) != 0) return std::nullopt;
    std::uint64_t dim = 0;
    in.read(reinterpret_cast<char*>(&dim), sizeof(dim));
    if (!in || dim > (1ull << 32)) return std::nullopt;
    std::vector<double> entries(dim);
    in.read(reinterpret_cast<char*>(entries.data()), static_cast<std::streamsize>(dim * sizeof(double)));
    if (!in || !all_finite(entries)) return std::nullopt;
    return RealVector(std::move(entries));
}

void store_cached_vector(const std::filesystem::path& file, const RealVector& v) {
    std::filesystem::create_directories(file.parent_path());
    const auto tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("store_cached_vector: cannot open " + tmp);
        out.write(kMagic, 8);
        const std::uint64_t dim = v.dim();
        out.write(reinterpret_cast<const char*>(&dim), sizeof(dim));
        out.write(reinterpret_cast<const char*>(v.entries().data()),
                  static_cast<std::streamsize>(dim * sizeof(double)));
        if (!out) throw std::runtime_error("store_cached_vector: write failed for " + tmp);
    }
    std::filesystem::rename(tmp, file);
}

RealVector reference_solution(const PrimalDualProblem& problem, const std::string& key,
                              const std::filesystem::path& cache_dir) {
    const auto file = cache_dir / (key + ".ref");
    if (auto cached = load_cached_vector(file)) return *cached;

    const StepSizes steps = default_stepsizes(problem);
    const InertialSchedule sched = InertialSchedule::dr_defaults(0.0).with_lambda(1.0);
    const PDResult run =
        pd_solve(problem, pd_init(problem), steps, sched, StopRule::step_norm(1e-13, 10'000'000));
    if (!run.report.converged) {
        throw std::runtime_error("reference_solution: did not reach step norm 1e-13 for " + key);
    }
    store_cached_vector(file, run.solution.p1);
    return run.solution.p1;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_trace_csv(const std::filesystem::path& file, const RunReport& report) {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    const auto tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("write_trace_csv: cannot open " + tmp);
        out << "n,rmse,fp_residual,objective\n";
        const auto at = [](const std::vector<double>& v, std::size_t i) {
            return i < v.size() ? v[i] : 0.0;
        };
        for (long i = 0; i < report.iterations; ++i) {
            const auto k = static_cast<std::size_t>(i);
            out << (i + 1) << ',' << format_double(at(report.rmse_trace, k)) << ','
                << format_double(at(report.residual_trace, k)) << ','
                << format_double(at(report.objective_trace, k)) << '\n';
        }
        if (!out) throw std::runtime_error("write_trace_csv: write failed for " + tmp);
    }
    std::filesystem::rename(tmp, file);
}

} // namespace idrs
