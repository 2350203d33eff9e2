#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string stdout_text;
};

CmdResult run_cli(const std::string& args, const fs::path& workdir) {
    const fs::path out = workdir / "stdout.txt";
    const std::string cmd = "cd '" + workdir.string() + "' && IDRS_CACHE_DIR='" +
                            (workdir / "cache").string() + "' '" + IDRS_CLI_BIN + "' " + args +
                            " > '" + out.string() + "' 2>&1";
    const int raw = std::system(cmd.c_str());
    CmdResult r;
    r.exit_code = WEXITSTATUS(raw);
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    r.stdout_text = ss.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const char* name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("validate subcommand") {
    const fs::path dir = fresh_dir("idrs-cli-validate");
    SUBCASE("admissible triple prints the relaxation bounds") {
        const auto r = run_cli("validate --alpha 0.1 --sigma 0.01 --delta 1", dir);
        CHECK(r.exit_code == 0);
        CHECK(r.stdout_text.find("0.801639") != std::string::npos);
        CHECK(r.stdout_text.find("1.603279") != std::string::npos);  // 2*lambda_max, 6 digits
    }
    SUBCASE("alpha = 0 collapse") {
        const auto r = run_cli("validate --alpha 0 --sigma 0.5 --delta 1", dir);
        CHECK(r.exit_code == 0);
        CHECK(r.stdout_text.find("0.666667") != std::string::npos);
    }
    SUBCASE("inadmissible delta exits 1 and names the threshold") {
        const auto r = run_cli("validate --alpha 0.9 --delta 0.1 --sigma 1", dir);
        CHECK(r.exit_code == 1);
        CHECK(r.stdout_text.find("12.83") != std::string::npos);
    }
    SUBCASE("step-size rule check") {
        const auto ok = run_cli("validate --alpha 0 --tau 1 --sigma-i 1 --norms 1", dir);
        CHECK(ok.exit_code == 0);
        CHECK(ok.stdout_text.find("rho") != std::string::npos);
        const auto bad = run_cli("validate --alpha 0 --tau 2 --sigma-i 2 --norms 1", dir);
        CHECK(bad.exit_code == 1);
    }
    SUBCASE("unknown flags exit 1") {
        CHECK(run_cli("validate --bogus 1", dir).exit_code == 1);
    }
    fs::remove_all(dir);
}

TEST_CASE("toy subcommand passes on a fresh checkout") {
    const fs::path dir = fresh_dir("idrs-cli-toy");
    CHECK(run_cli("toy", dir).exit_code == 0);
    CHECK(run_cli("toy --alpha 0.3", dir).exit_code == 0);
    CHECK(run_cli("toy --seed 7", dir).exit_code == 0);
    fs::remove_all(dir);
}

TEST_CASE("heron subcommand emits deterministic trace files") {
    const fs::path dir = fresh_dir("idrs-cli-heron");
    const std::string flags = "heron --n 2 --m 3 --seed 1 --max-iter 200000 --format json";
    const auto first = run_cli(flags + " --output run1", dir);
    CHECK(first.exit_code == 0);

    const fs::path cell = dir / "run1" / "heron_inertial_eps1e-05.csv";
    REQUIRE(fs::exists(cell));
    std::ifstream in(cell);
    std::string header;
    std::getline(in, header);
    CHECK(header == "n,rmse,fp_residual,objective");
    std::string row;
    std::getline(in, row);
    CHECK(row.rfind("1,", 0) == 0);

    CHECK(fs::exists(dir / "run1" / "heron_summary.csv"));
    CHECK(fs::exists(dir / "run1" / "heron_summary.json"));

    const auto second = run_cli(flags + " --output run2", dir);
    CHECK(second.exit_code == 0);
    for (const char* name :
         {"heron_inertial_eps1e-05.csv", "heron_classical_eps1e-05.csv",
          "heron_subgradient_eps1e-05.csv", "heron_inertial_eps1e-10.csv"}) {
        CAPTURE(name);
        const std::string a = slurp(dir / "run1" / name);
        const std::string b = slurp(dir / "run2" / name);
        CHECK(!a.empty());
        CHECK(a == b);  // byte-identical across reruns
    }
    // summaries agree except for the wall-clock column
    std::ifstream sa(dir / "run1" / "heron_summary.csv"), sb(dir / "run2" / "heron_summary.csv");
    std::string la, lb;
    while (std::getline(sa, la) && std::getline(sb, lb)) {
        const auto strip = [](std::string s) {
            std::stringstream ss(s);
            std::string field, out;
            for (int i = 0; std::getline(ss, field, ','); ++i) {
                if (i == 3) field = "-";  // seconds
                out += field + ",";
            }
            return out;
        };
        CHECK(strip(la) == strip(lb));
    }
    fs::remove_all(dir);
}

TEST_CASE("cluster subcommand on a reduced instance") {
    const fs::path dir = fresh_dir("idrs-cli-cluster");
    const auto r = run_cli(
        "cluster --per-moon 8 --K 3 --gamma-clust 1.0 --max-iter 200000 --output out", dir);
    CHECK(r.exit_code == 0);
    for (const char* name :
         {"cluster_inertial_eps1e-04.csv", "cluster_classical_eps1e-04.csv",
          "cluster_inertial_eps1e-08.csv", "cluster_classical_eps1e-08.csv",
          "cluster_summary.csv"}) {
        CAPTURE(name);
        CHECK(fs::exists(dir / "out" / name));
    }
    // iteration count at the tighter tolerance dominates the looser one
    std::ifstream in(dir / "out" / "cluster_summary.csv");
    std::string line;
    std::getline(in, line);  // header
    long iters[4] = {0, 0, 0, 0};
    for (auto& cur : iters) {
        REQUIRE(static_cast<bool>(std::getline(in, line)));
        std::stringstream ss(line);
        std::string field;
        std::getline(ss, field, ',');  // algorithm
        std::getline(ss, field, ',');  // eps
        std::getline(ss, field, ',');  // iterations
        cur = std::stol(field);
    }
    CHECK(iters[2] >= iters[0]);  // inertial: 1e-8 needs at least as many as 1e-4
    CHECK(iters[3] >= iters[1]);  // classical likewise
    fs::remove_all(dir);
}
