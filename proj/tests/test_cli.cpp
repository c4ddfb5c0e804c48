// End-to-end tests that spawn the command-line binary.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "iristat/score_io.hpp"

namespace fs = std::filesystem;

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

fs::path work_dir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() /
                 ("iristat_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CmdResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const auto out_path = work_dir() / "stdout.txt";
    const auto err_path = work_dir() / "stderr.txt";
    const std::string cmd = env_prefix + IRISTAT_CLI_PATH " " + args + " > " +
                            out_path.string() + " 2> " + err_path.string();
    const int status = std::system(cmd.c_str());
    CmdResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

std::string path_of(const std::string& name) {
    return (work_dir() / name).string();
}

}  // namespace

TEST_CASE("gen writes deterministic files and reports what it did") {
    const auto r1 = run_cli("gen --n 30 --dof 228 --seed 5 --out " +
                            path_of("g1.icb"));
    REQUIRE(r1.exit_code == 0);
    CHECK(r1.out.find("codes=30") != std::string::npos);
    CHECK(r1.out.find("seed=5") != std::string::npos);

    const auto r2 = run_cli("gen --n 30 --dof 228 --seed 5 --out " +
                            path_of("g2.icb"));
    REQUIRE(r2.exit_code == 0);
    CHECK(slurp(path_of("g1.icb")) == slurp(path_of("g2.icb")));
    CHECK(!slurp(path_of("g1.icb")).empty());

    const auto single =
        run_cli("gen --n 1 --dof 64 --seed 1 --out " + path_of("one.icb"));
    CHECK(single.exit_code == 0);
}

TEST_CASE("gen rejects invalid specs with exit code 2") {
    const auto r = run_cli("gen --n 4 --dof 0 --seed 1 --out " +
                           path_of("bad.icb"));
    CHECK(r.exit_code == 2);
    CHECK(!r.err.empty());
}

TEST_CASE("match on two codes produces exactly one row") {
    REQUIRE(run_cli("gen --n 2 --dof 228 --seed 9 --out " + path_of("two.icb"))
                .exit_code == 0);
    const auto r = run_cli("match --codes " + path_of("two.icb") +
                           " --quiet --out " + path_of("two.csv"));
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("pairs=1") != std::string::npos);
    const auto rows = iristat::codes::read_scores_csv_file(path_of("two.csv"));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].id_a == "c000000");
    CHECK(rows[0].id_b == "c000001");
    CHECK(rows[0].valid);
}

TEST_CASE("match on a missing file exits with code 1") {
    const auto r = run_cli("match --codes " + path_of("absent.icb") +
                           " --quiet --out " + path_of("x.csv"));
    CHECK(r.exit_code == 1);
    CHECK(!r.err.empty());
}

TEST_CASE("more rotations never worsen any pair") {
    REQUIRE(run_cli("gen --n 40 --dof 228 --seed 77 --out " + path_of("c40.icb"))
                .exit_code == 0);
    REQUIRE(run_cli("match --codes " + path_of("c40.icb") +
                    " --rotations 1 --quiet --out " + path_of("k1.csv"))
                .exit_code == 0);
    REQUIRE(run_cli("match --codes " + path_of("c40.icb") +
                    " --rotations 7 --quiet --out " + path_of("k7.csv"))
                .exit_code == 0);
    const auto k1 = iristat::codes::read_scores_csv_file(path_of("k1.csv"));
    const auto k7 = iristat::codes::read_scores_csv_file(path_of("k7.csv"));
    REQUIRE(k1.size() == 40 * 39 / 2);
    REQUIRE(k1.size() == k7.size());
    bool improved = false;
    for (std::size_t i = 0; i < k1.size(); ++i) {
        REQUIRE(k1[i].id_a == k7[i].id_a);
        REQUIRE(k1[i].id_b == k7[i].id_b);
        CHECK(k7[i].hd <= k1[i].hd);
        if (k7[i].hd < k1[i].hd) improved = true;
    }
    CHECK(improved);
}

TEST_CASE("the thread hint changes nothing about the output") {
    REQUIRE(run_cli("gen --n 25 --dof 228 --seed 83 --out " + path_of("t.icb"))
                .exit_code == 0);
    REQUIRE(run_cli("match --codes " + path_of("t.icb") +
                    " --threads 1 --quiet --out " + path_of("t1.csv"))
                .exit_code == 0);
    REQUIRE(run_cli("match --codes " + path_of("t.icb") +
                    " --threads 5 --quiet --out " + path_of("t5.csv"))
                .exit_code == 0);
    REQUIRE(run_cli("match --codes " + path_of("t.icb") + " --quiet --out " +
                        path_of("tenv.csv"),
                    "IRISTAT_THREADS=3 ")
                .exit_code == 0);
    CHECK(slurp(path_of("t1.csv")) == slurp(path_of("t5.csv")));
    CHECK(slurp(path_of("t1.csv")) == slurp(path_of("tenv.csv")));
}

TEST_CASE("fit prints the estimated degrees of freedom") {
    REQUIRE(run_cli("gen --n 120 --dof 228 --seed 21 --out " + path_of("f.icb"))
                .exit_code == 0);
    REQUIRE(run_cli("match --codes " + path_of("f.icb") +
                    " --rotations 1 --quiet --out " + path_of("f.csv"))
                .exit_code == 0);
    const auto text = run_cli("fit " + path_of("f.csv"));
    REQUIRE(text.exit_code == 0);
    CHECK(text.out.find("dof=2") != std::string::npos);  // 2xx

    const auto j = run_cli("--json fit " + path_of("f.csv"));
    REQUIRE(j.exit_code == 0);
    const auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["record"] == "fit");
    CHECK(parsed["count"] == 120 * 119 / 2);
    const int dof = parsed["dof"];
    CHECK(dof > 200);
    CHECK(dof < 256);
}

TEST_CASE("fit on a degenerate sample exits with code 2") {
    {
        std::ofstream f(path_of("flat.txt"));
        for (int i = 0; i < 10; ++i) f << "0.5\n";
    }
    const auto r = run_cli("fit " + path_of("flat.txt"));
    CHECK(r.exit_code == 2);
    CHECK(!r.err.empty());
}

TEST_CASE("ks of a file against itself is exactly zero") {
    REQUIRE(run_cli("gen --n 40 --dof 64 --seed 31 --out " + path_of("k.icb"))
                .exit_code == 0);
    REQUIRE(run_cli("match --codes " + path_of("k.icb") +
                    " --quiet --out " + path_of("k.csv"))
                .exit_code == 0);
    const auto r = run_cli("--json ks " + path_of("k.csv") + " " + path_of("k.csv"));
    REQUIRE(r.exit_code == 0);
    const auto parsed = nlohmann::json::parse(r.out);
    CHECK(parsed["d"] == 0.0);
    CHECK(parsed["p_value"] == 1.0);
}

TEST_CASE("ev reports a left-shifted minimum model") {
    const auto r = run_cli("--json ev --dof 228 --rotations 7 --threshold 0.33");
    REQUIRE(r.exit_code == 0);
    const auto parsed = nlohmann::json::parse(r.out);
    CHECK(parsed["base_n"] == 228);
    CHECK(parsed["k"] == 7);
    CHECK(parsed["ev_mean"].get<double>() < 0.5);
    CHECK(parsed["fmr"].get<double>() > 0.0);
    CHECK(parsed["fmr"].get<double>() < 1e-5);

    const auto bad = run_cli("ev --rotations 7");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("qq remaps a threshold between two cohorts") {
    REQUIRE(run_cli("gen --n 150 --dof 260 --seed 41 --out " + path_of("nd.icb"))
                .exit_code == 0);
    REQUIRE(run_cli("gen --n 150 --dof 228 --seed 42 --out " + path_of("af.icb"))
                .exit_code == 0);
    REQUIRE(run_cli("match --codes " + path_of("nd.icb") +
                    " --rotations 1 --quiet --out " + path_of("nd.csv"))
                .exit_code == 0);
    REQUIRE(run_cli("match --codes " + path_of("af.icb") +
                    " --rotations 1 --quiet --out " + path_of("af.csv"))
                .exit_code == 0);

    const auto emp = run_cli("--json qq --ref " + path_of("nd.csv") +
                             " --target " + path_of("af.csv") +
                             " --threshold 0.47");
    REQUIRE(emp.exit_code == 0);
    const auto parsed = nlohmann::json::parse(emp.out);
    CHECK(parsed["method"] == "empirical");
    const double out_t = parsed["threshold_out"];
    CHECK(out_t > 0.4);
    CHECK(out_t < 0.5);

    const auto ana = run_cli("--json qq --ref " + path_of("nd.csv") +
                             " --target " + path_of("af.csv") +
                             " --threshold 0.39 --analytic --rotations 7 --fig " +
                             path_of("qq.svg"));
    REQUIRE(ana.exit_code == 0);
    const auto aparsed = nlohmann::json::parse(ana.out);
    const double remapped = aparsed["threshold_out"];
    CHECK(remapped > 0.37);  // narrower target spread pulls 0.39 toward 0.38
    CHECK(remapped < 0.39);
    CHECK(slurp(path_of("qq.svg")).substr(0, 4) == "<svg");
}

TEST_CASE("equity accepts direct rates") {
    const auto r = run_cli("--json equity --rate a=1e-6 --rate b=1e-6");
    REQUIRE(r.exit_code == 0);
    const auto parsed = nlohmann::json::parse(r.out);
    CHECK(parsed["factor"] == 1.0);

    const auto bad = run_cli("equity --rate a=0");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("report runs the full pipeline over two cohorts") {
    REQUIRE(run_cli("gen --n 600 --dof 228 --seed 1042 --out " + path_of("raf.icb"))
                .exit_code == 0);
    REQUIRE(run_cli("gen --n 600 --dof 260 --seed 1043 --out " + path_of("rnd.icb"))
                .exit_code == 0);
    REQUIRE(run_cli("match --codes " + path_of("raf.icb") +
                    " --rotations 1 --quiet --out " + path_of("raf.csv"))
                .exit_code == 0);
    REQUIRE(run_cli("match --codes " + path_of("rnd.icb") +
                    " --rotations 1 --quiet --out " + path_of("rnd.csv"))
                .exit_code == 0);

    const auto out_dir = (work_dir() / "report").string();
    const auto r = run_cli("report --scores af=" + path_of("raf.csv") +
                           " --scores nd=" + path_of("rnd.csv") +
                           " --threshold 0.39 --equity-threshold 0.35" +
                           " --out-dir " + out_dir);
    REQUIRE(r.exit_code == 0);

    for (const char* name : {"af_hist.svg", "nd_hist.svg", "compare.svg",
                             "qq.svg", "report.jsonl", "report.csv"}) {
        INFO("expected file ", name);
        CHECK(fs::exists(fs::path(out_dir) / name));
    }

    std::istringstream jsonl(slurp(fs::path(out_dir) / "report.jsonl"));
    std::string line;
    double dof_af = 0.0, dof_nd = 0.0, remapped = 0.0;
    int fits = 0, ks = 0, remaps = 0, equity = 0;
    while (std::getline(jsonl, line)) {
        const auto rec = nlohmann::json::parse(line);
        if (rec["record"] == "fit") {
            ++fits;
            if (rec["label"] == "af") dof_af = rec["dof"].get<double>();
            if (rec["label"] == "nd") dof_nd = rec["dof"].get<double>();
        } else if (rec["record"] == "ks") {
            ++ks;
            CHECK(rec["p_value"].get<double>() < 1e-10);
        } else if (rec["record"] == "remap") {
            ++remaps;
            remapped = rec["threshold_out"].get<double>();
        } else if (rec["record"] == "equity") {
            ++equity;
            CHECK(rec["factor"].get<double>() >= 1.0);
        }
    }
    CHECK(fits == 2);
    CHECK(ks == 1);
    CHECK(remaps == 1);
    CHECK(equity == 1);
    CHECK(std::fabs(dof_af - 228.0) / 228.0 < 0.05);
    CHECK(std::fabs(dof_nd - 260.0) / 260.0 < 0.05);
    // 0.39 moves toward 0.5 when the target spread is narrower
    CHECK(remapped > 0.37);
    CHECK(remapped < 0.41);

    // every figure datum also lives in the machine-readable outputs
    const auto csv = slurp(fs::path(out_dir) / "report.csv");
    CHECK(csv.find("fit,af,dof,") != std::string::npos);
    CHECK(csv.find("fit,nd,dof,") != std::string::npos);
    CHECK(csv.find("remap,nd -> af,") == std::string::npos);  // order is af -> nd
    CHECK(csv.find("remap,af -> nd,") != std::string::npos);
}

TEST_CASE("unknown flags fail with a nonzero exit") {
    const auto r = run_cli("gen --frobnicate 3");
    CHECK(r.exit_code != 0);
}
