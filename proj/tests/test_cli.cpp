#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "jeig/harness/mat_io.hpp"
#include "jeig/harness/run_record.hpp"
#include "jeig/pivot_strategy.hpp"

using namespace jeig;

namespace {

std::string scratch_dir() {
    static std::string dir = [] {
        char tmpl[] = "/tmp/jeig_cli_test_XXXXXX";
        char* d = mkdtemp(tmpl);
        REQUIRE(d != nullptr);
        return std::string(d);
    }();
    return dir;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CmdResult {
    int code = -1;
    std::string out;
};

CmdResult run_cli(const std::string& args) {
    static int counter = 0;
    std::string cap = scratch_dir() + "/out" + std::to_string(counter++);
    std::string cmd =
        std::string(JEIG_CLI_PATH) + " " + args + " >" + cap + " 2>&1";
    int rc = std::system(cmd.c_str());
    CmdResult r;
    r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(cap);
    return r;
}

// drops the wall-time and output-path lines so two runs can be compared
std::string stable_part(const std::string& json) {
    std::istringstream in(json);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (line.find("\"time_ms\"") == std::string::npos &&
            line.find("\"eigenvalues_path\"") == std::string::npos)
            out << line << "\n";
    return out.str();
}

}  // namespace

TEST_CASE("generate is deterministic and seed-sensitive") {
    std::string a = scratch_dir() + "/gen_a.txt";
    std::string b = scratch_dir() + "/gen_b.txt";
    std::string c = scratch_dir() + "/gen_c.txt";
    CHECK(run_cli("generate " + a + " --n 12 --seed 9").code == 0);
    CHECK(run_cli("generate " + b + " --n 12 --seed 9").code == 0);
    CHECK(run_cli("generate " + c + " --n 12 --seed 10").code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a) != slurp(c));
    DenseMatrix m = harness::read_matrix(a);
    CHECK(m.rows() == 12);
    for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t j = 0; j < 12; ++j) {
            CHECK(m(i, j) == m(j, i));
            CHECK(std::abs(m(i, j)) <= 5.0);
        }
    CHECK(run_cli("generate " + a + " --n 1").code == 3);
}

TEST_CASE("solve then verify passes and solve is bitwise deterministic") {
    std::string m = scratch_dir() + "/pipe.txt";
    REQUIRE(run_cli("generate " + m + " --n 24 --seed 3").code == 0);
    std::string j1 = scratch_dir() + "/pipe1.json";
    std::string j2 = scratch_dir() + "/pipe2.json";
    std::string e1 = scratch_dir() + "/pipe1.eigs";
    std::string e2 = scratch_dir() + "/pipe2.eigs";
    CHECK(run_cli("solve " + m + " --algorithm tfc --processes 3 --json " +
                  j1 + " --eigenvalues " + e1)
              .code == 0);
    CHECK(run_cli("solve " + m + " --algorithm tfc --processes 3 --json " +
                  j2 + " --eigenvalues " + e2)
              .code == 0);
    CHECK(slurp(e1) == slurp(e2));
    std::string a = stable_part(slurp(j1));
    std::string b = stable_part(slurp(j2));
    CHECK(a != "");
    CHECK(a == b);
    auto v = run_cli("verify " + m + " " + j1);
    CHECK(v.code == 0);
    CHECK(v.out.find("VERIFY: PASS") != std::string::npos);
    CHECK(v.out.find("eigenvalues-vs-oracle: PASS") != std::string::npos);
}

TEST_CASE("run record JSON round-trips losslessly") {
    harness::RunRecord rec;
    rec.variant = Algorithm::HBSC;
    rec.n = 37;
    rec.p = 4;
    rec.sweeps = 9;
    rec.stages = 123;
    rec.rotations = 4567;
    rec.time_ms = 12.3456789012345678;
    rec.metrics.orth_fro = 1.2345678901234567e-15;
    rec.metrics.orth_fro_rev = 2.3456789012345678e-15;
    rec.metrics.residual_rel = 3.4567890123456789e-14;
    rec.metrics.theorem1_bound = 4.5678901234567891e-11;
    rec.metrics.theorem1_pass = true;
    rec.eigenvalues_path = "some/dir/values.eigs";
    harness::RunRecord back =
        harness::run_record_from_json_text(harness::to_json_text(rec));
    CHECK(back.variant == rec.variant);
    CHECK(back.n == rec.n);
    CHECK(back.p == rec.p);
    CHECK(back.sweeps == rec.sweeps);
    CHECK(back.stages == rec.stages);
    CHECK(back.rotations == rec.rotations);
    CHECK(back.time_ms == rec.time_ms);
    CHECK(back.metrics.orth_fro == rec.metrics.orth_fro);
    CHECK(back.metrics.orth_fro_rev == rec.metrics.orth_fro_rev);
    CHECK(back.metrics.residual_rel == rec.metrics.residual_rel);
    CHECK(back.metrics.theorem1_bound == rec.metrics.theorem1_bound);
    CHECK(back.metrics.theorem1_pass == rec.metrics.theorem1_pass);
    CHECK(back.eigenvalues_path == rec.eigenvalues_path);
}

TEST_CASE("tampered eigenvalue file fails verification with a named check") {
    std::string m = scratch_dir() + "/tamper.txt";
    std::string j = scratch_dir() + "/tamper.json";
    std::string e = scratch_dir() + "/tamper.eigs";
    REQUIRE(run_cli("generate " + m + " --n 16 --seed 11").code == 0);
    REQUIRE(run_cli("solve " + m + " --algorithm hf --processes 2 --json " +
                    j + " --eigenvalues " + e)
                .code == 0);
    std::vector<double> vals = harness::read_values(e);
    vals[vals.size() / 2] *= 1.01;
    harness::write_values(e, vals, true);
    auto v = run_cli("verify " + m + " " + j);
    CHECK(v.code == 1);
    CHECK(v.out.find("eigenvalues-vs-oracle: FAIL") != std::string::npos);
    CHECK(v.out.find("VERIFY: FAIL") != std::string::npos);
}

TEST_CASE("exit codes: io 4, invalid input 3, non-convergence 2") {
    CHECK(run_cli("solve " + scratch_dir() + "/missing.txt").code == 4);
    std::string m = scratch_dir() + "/codes.txt";
    REQUIRE(run_cli("generate " + m + " --n 16 --seed 2").code == 0);
    CHECK(run_cli("solve " + m + " --algorithm nope").code == 3);
    CHECK(run_cli("solve " + m + " --processes 0").code == 3);
    CHECK(run_cli("solve " + m + " --not-a-flag").code == 3);
    auto nc = run_cli("solve " + m + " --algorithm tb --max-sweeps 1 --json " +
                      scratch_dir() + "/nc.json");
    CHECK(nc.code == 2);
    std::string err_json = slurp(scratch_dir() + "/nc.json");
    CHECK(err_json.find("\"non_convergence\"") != std::string::npos);
    CHECK(run_cli("--help").code == 0);
}

TEST_CASE("pivot-trace matches the schedule") {
    auto r = run_cli("pivot-trace --processes 4");
    REQUIRE(r.code == 0);
    auto sched = sweep_schedule(4);
    std::istringstream in(r.out);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "step,rank,i_blk,j_blk");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t step, rank, i_blk, j_blk;
        REQUIRE(std::sscanf(line.c_str(), "%zu,%zu,%zu,%zu", &step, &rank,
                            &i_blk, &j_blk) == 4);
        REQUIRE(step < sched.size());
        REQUIRE(rank < 4);
        CHECK(sched[step][rank].first == i_blk);
        CHECK(sched[step][rank].second == j_blk);
        ++rows;
    }
    CHECK(rows == sched.size() * 4);
}

TEST_CASE("bench emits a parseable grid with the sweep comparison") {
    std::string csv = scratch_dir() + "/bench.csv";
    auto r = run_cli(
        "bench --sizes 8 --variants hf hfsc --processes 1 --matrices 2 "
        "--seed 4 --out " +
        csv);
    REQUIRE(r.code == 0);
    std::istringstream in(slurp(csv));
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line ==
          "variant,n,p,seed,sweeps,stages,time_ms,orth_fro,residual_rel,"
          "abs_lambda_min,abs_lambda_max,status");
    std::size_t data = 0, cmp = 0;
    bool summary = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("# hf_vs_hfsc summary", 0) == 0)
            summary = true;
        else if (line.rfind("# hf_vs_hfsc", 0) == 0)
            ++cmp;
        else {
            CHECK(line.find(",ok") != std::string::npos);
            ++data;
        }
    }
    CHECK(data == 4);  // 2 variants x 1 process x 2 matrices
    CHECK(cmp == 2);
    CHECK(summary);
}
