#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "jeig/engine.hpp"
#include "jeig/errors.hpp"
#include "jeig/factor.hpp"
#include "jeig/harness/generate.hpp"
#include "jeig/harness/mat_io.hpp"
#include "jeig/harness/oracle.hpp"
#include "jeig/harness/run_record.hpp"
#include "jeig/pivot_strategy.hpp"
#include "jeig/solver.hpp"

namespace {

using namespace jeig;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string error_kind(const std::exception& e) {
    if (dynamic_cast<const non_convergence_error*>(&e)) return "non_convergence";
    if (dynamic_cast<const rank_deficient_error*>(&e)) return "rank_deficient";
    if (dynamic_cast<const not_positive_definite_error*>(&e))
        return "not_positive_definite";
    if (dynamic_cast<const harness::io_error*>(&e)) return "io";
    return "invalid_input";
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw harness::io_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw harness::io_error("write failed: " + path);
}

struct CheckLine {
    std::string name;
    bool pass;
    std::string detail;
};

void print_checks(const std::vector<CheckLine>& checks, bool& all_pass) {
    for (const auto& c : checks) {
        std::cout << "CHECK " << c.name << ": " << (c.pass ? "PASS" : "FAIL");
        if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
        std::cout << "\n";
        all_pass = all_pass && c.pass;
    }
}

int run_cli(int argc, char** argv) {
    CLI::App app{"one-sided block Jacobi eigensolver toolkit"};
    app.require_subcommand(1);
    int exit_code = 0;

    // ---- generate ----------------------------------------------------
    std::string gen_out, gen_dist = "uniform";
    std::size_t gen_n = 0;
    std::uint64_t gen_seed = 1;
    bool gen_exact = true;
    auto* gen = app.add_subcommand(
        "generate", "write a deterministic symmetric test matrix");
    gen->add_option("output", gen_out, "matrix file to write")->required();
    gen->add_option("--n", gen_n, "matrix order (>= 2)")->required();
    gen->add_option("--seed", gen_seed, "PRNG seed")->capture_default_str();
    gen->add_option("--dist", gen_dist,
                    "uniform: entries in [-5,5]; graded: D*A*D spanning 14 "
                    "orders of magnitude")
        ->capture_default_str()
        ->check(CLI::IsMember({"uniform", "graded"}));
    gen->add_flag("--exact-io,!--human-io", gen_exact,
                  "hexfloat text (bitwise round-trip; default) vs 17-digit");
    gen->callback([&] {
        if (gen_n < 2) throw std::invalid_argument("generate: need --n >= 2");
        DenseMatrix m = gen_dist == "graded"
                            ? harness::graded_spd(gen_n, gen_seed)
                            : harness::random_symmetric(gen_n, gen_seed);
        harness::write_matrix(gen_out, m, gen_exact);
        std::cout << "wrote " << gen_dist << " n=" << gen_n << " seed="
                  << gen_seed << " to " << gen_out << "\n";
    });

    // ---- factorize ---------------------------------------------------
    std::string fac_in, fac_out;
    bool fac_exact = true;
    auto* fac = app.add_subcommand(
        "factorize",
        "symmetric indefinite factorization P'HP = R' J R of a matrix file");
    fac->add_option("matrix", fac_in, "input matrix file")->required();
    fac->add_option("--out", fac_out,
                    "output prefix (default: the input path)");
    fac->add_flag("--exact-io,!--human-io", fac_exact, "numeric text mode");
    fac->callback([&] {
        DenseMatrix h = harness::read_matrix(fac_in);
        IndefFactor f = bunch_parlett_complete(h);
        std::string prefix = fac_out.empty() ? fac_in : fac_out;
        harness::write_matrix(prefix + ".r.txt", f.R, fac_exact);
        harness::write_signs(prefix + ".signs.txt", f.J_P);
        std::vector<double> perm(f.P.size());
        for (std::size_t k = 0; k < f.P.size(); ++k)
            perm[k] = static_cast<double>(f.P[k]);
        harness::write_values(prefix + ".perm.txt", perm, false);
        std::cout << "rank " << f.rank << " of " << h.rows() << ", n_pos "
                  << f.J_P.n_pos << ", n_neg " << f.J_P.size() - f.J_P.n_pos
                  << "\nwrote " << prefix << ".r.txt, .signs.txt, .perm.txt\n";
    });

    // ---- solve ---------------------------------------------------------
    std::string sol_in, sol_alg = "tf", sol_json, sol_eigs;
    std::size_t sol_p = 1, sol_sweeps = 50;
    double sol_tol = 0.0;
    bool sol_exact = true;
    auto* sol = app.add_subcommand("solve", "eigendecompose a symmetric matrix");
    sol->add_option("matrix", sol_in, "input matrix file")->required();
    sol->add_option("--algorithm", sol_alg,
                    "tb|tbc|tf|tfc|hb|hbc|hbsc|hf|hfc|hfsc")->capture_default_str();
    sol->add_option("--processes", sol_p, "worker count")->capture_default_str();
    sol->add_option("--tol", sol_tol,
                    "convergence tolerance (0 = sqrt(n)*eps)")->capture_default_str();
    sol->add_option("--max-sweeps", sol_sweeps, "sweep cap")->capture_default_str();
    sol->add_option("--json", sol_json, "write the run record here");
    sol->add_option("--eigenvalues", sol_eigs,
                    "eigenvalue file (default: <matrix>.<algorithm>.eigs)");
    sol->add_flag("--exact-io,!--human-io", sol_exact, "numeric text mode");
    sol->callback([&] {
        try {
            Algorithm a = algorithm_from_name(sol_alg);
            DenseMatrix h = harness::read_matrix(sol_in);
            SolveReport rep = solve_symmetric(h, a, sol_p, sol_tol, sol_sweeps);
            std::string eig_path =
                sol_eigs.empty() ? sol_in + "." + lower(algorithm_name(a)) +
                                       ".eigs"
                                 : sol_eigs;
            harness::write_values(eig_path, rep.eigenvalues, sol_exact);
            harness::RunRecord rec = harness::RunRecord::from_report(rep, eig_path);
            std::string json = harness::to_json_text(rec);
            if (sol_json.empty()) {
                std::cout << json;
            } else {
                write_text(sol_json, json);
                std::cout << "solved n=" << rep.n << " variant="
                          << lower(algorithm_name(a)) << " p=" << rep.p
                          << " sweeps=" << rep.sweeps << " -> " << sol_json
                          << ", " << eig_path << "\n";
            }
        } catch (const std::exception& e) {
            std::string json = std::string("{\n  \"error\": {\n    \"type\": \"") +
                               error_kind(e) + "\",\n    \"message\": " +
                               nlohmann::json(e.what()).dump() + "\n  }\n}\n";
            if (!sol_json.empty()) {
                std::ofstream out(sol_json);
                if (out) out << json;
            } else {
                std::cout << json;
            }
            throw;
        }
    });

    // ---- verify ---------------------------------------------------------
    std::string ver_matrix, ver_report;
    bool ver_demo = false;
    auto* ver = app.add_subcommand(
        "verify", "check a solve run against the independent oracle");
    ver->add_option("matrix", ver_matrix, "matrix file the run solved");
    ver->add_option("report", ver_report, "run record JSON from solve");
    ver->add_flag("--graded-demo", ver_demo,
                  "built-in demo: graded 8x8, relative accuracy vs a naive "
                  "absolute-threshold Jacobi");
    ver->callback([&] {
        bool all = true;
        std::vector<CheckLine> checks;
        if (ver_demo) {
            DenseMatrix h = harness::graded_spd(8, 7);
            auto ld = harness::oracle_eigen_ld(h);
            std::vector<double> ref(ld.eigenvalues.begin(),
                                    ld.eigenvalues.end());
            auto rep = solve_symmetric(h, Algorithm::TF, 1);
            auto good = relative_accuracy_report(rep.eigenvalues, ref);
            auto naive = relative_accuracy_report(
                harness::naive_absolute_jacobi(h), ref);
            checks.push_back({"graded-solver-relative-accuracy",
                              good.max_rel <= 1e-10,
                              "max_rel=" + fmt(good.max_rel)});
            checks.push_back({"graded-naive-loses-small-eigenvalues",
                              naive.max_rel > 1e-6,
                              "max_rel=" + fmt(naive.max_rel)});
            print_checks(checks, all);
            std::cout << (all ? "VERIFY: PASS\n" : "VERIFY: FAIL\n");
            if (!all) exit_code = 1;
            return;
        }
        if (ver_matrix.empty() || ver_report.empty())
            throw std::invalid_argument(
                "verify: need MATRIX and REPORT (or --graded-demo)");
        DenseMatrix h = harness::read_matrix(ver_matrix);
        if (h.rows() > 512)
            throw std::invalid_argument("verify: dense oracle capped at n=512");
        harness::RunRecord rec = harness::read_run_record(ver_report);
        std::vector<double> filed = harness::read_values(rec.eigenvalues_path);

        auto oracle = harness::oracle_eigen(h);
        auto vs_oracle = relative_accuracy_report(filed, oracle.eigenvalues);
        checks.push_back({"eigenvalues-vs-oracle", vs_oracle.max_rel <= 1e-10,
                          "max_rel=" + fmt(vs_oracle.max_rel)});

        SolveReport fresh = solve_symmetric(h, rec.variant, rec.p);
        auto vs_fresh = relative_accuracy_report(filed, fresh.eigenvalues);
        checks.push_back({"eigenvalues-vs-recompute",
                          vs_fresh.max_rel <= 1e-12,
                          "max_rel=" + fmt(vs_fresh.max_rel)});
        checks.push_back({"counters-vs-report",
                          fresh.sweeps == rec.sweeps &&
                              fresh.stages == rec.stages &&
                              fresh.rotations == rec.rotations,
                          "sweeps=" + std::to_string(fresh.sweeps) +
                              " stages=" + std::to_string(fresh.stages) +
                              " rotations=" + std::to_string(fresh.rotations)});
        checks.push_back({"orthogonality", fresh.metrics.orth_fro <= 1e-12,
                          "orth_fro=" + fmt(fresh.metrics.orth_fro)});
        checks.push_back({"residual", fresh.metrics.residual_rel <= 1e-11,
                          "residual_rel=" + fmt(fresh.metrics.residual_rel)});
        if (is_trigonometric(rec.variant)) {
            auto t1 = check_theorem1(fresh);
            checks.push_back({"orthogonality-bound", t1.pass,
                              "norm2=" + fmt(t1.orth_norm2) +
                                  " bound=" + fmt(t1.bound)});
        }
        print_checks(checks, all);
        std::cout << (all ? "VERIFY: PASS\n" : "VERIFY: FAIL\n");
        if (!all) exit_code = 1;
    });

    // ---- bench ---------------------------------------------------------
    std::vector<std::size_t> ben_sizes{64}, ben_procs{1};
    std::vector<std::string> ben_variants;
    std::size_t ben_matrices = 1;
    std::uint64_t ben_seed = 1;
    std::string ben_out;
    auto* ben = app.add_subcommand("bench", "grid run, CSV to stdout or --out");
    ben->add_option("--sizes", ben_sizes, "matrix orders")->capture_default_str();
    ben->add_option("--variants", ben_variants,
                    "algorithms (default: all ten)");
    ben->add_option("--processes", ben_procs, "worker counts")->capture_default_str();
    ben->add_option("--matrices", ben_matrices, "matrices per size")->capture_default_str();
    ben->add_option("--seed", ben_seed, "base seed")->capture_default_str();
    ben->add_option("--out", ben_out, "CSV path (default: stdout)");
    ben->callback([&] {
        std::vector<Algorithm> algs;
        if (ben_variants.empty()) {
            algs = all_algorithms();
        } else {
            for (const auto& s : ben_variants)
                algs.push_back(algorithm_from_name(s));
        }
        std::string csv =
            "variant,n,p,seed,sweeps,stages,time_ms,orth_fro,residual_rel,"
            "abs_lambda_min,abs_lambda_max,status\n";
        struct SweepCell {
            std::size_t n, p;
            std::uint64_t seed;
            std::size_t hf = 0, hfsc = 0;
            bool have_hf = false, have_hfsc = false;
        };
        std::vector<SweepCell> cells;
        auto cell = [&](std::size_t n, std::size_t p,
                        std::uint64_t seed) -> SweepCell& {
            for (auto& c : cells)
                if (c.n == n && c.p == p && c.seed == seed) return c;
            cells.push_back({n, p, seed});
            return cells.back();
        };
        for (std::size_t n : ben_sizes) {
            for (std::size_t i = 0; i < ben_matrices; ++i) {
                std::uint64_t seed = ben_seed + i;
                DenseMatrix h = harness::random_symmetric(n, seed);
                for (Algorithm a : algs) {
                    for (std::size_t p : ben_procs) {
                        std::string row = lower(algorithm_name(a)) + "," +
                                          std::to_string(n) + "," +
                                          std::to_string(p) + "," +
                                          std::to_string(seed) + ",";
                        try {
                            SolveReport rep = solve_symmetric(h, a, p);
                            double lo = HUGE_VAL, hi = 0.0;
                            for (double lam : rep.eigenvalues) {
                                lo = std::min(lo, std::abs(lam));
                                hi = std::max(hi, std::abs(lam));
                            }
                            row += std::to_string(rep.sweeps) + "," +
                                   std::to_string(rep.stages) + "," +
                                   fmt(rep.time_ms) + "," +
                                   fmt(rep.metrics.orth_fro) + "," +
                                   fmt(rep.metrics.residual_rel) + "," +
                                   fmt(lo) + "," + fmt(hi) + ",ok";
                            if (a == Algorithm::HF) {
                                auto& c = cell(n, p, seed);
                                c.hf = rep.sweeps;
                                c.have_hf = true;
                            }
                            if (a == Algorithm::HFSC) {
                                auto& c = cell(n, p, seed);
                                c.hfsc = rep.sweeps;
                                c.have_hfsc = true;
                            }
                        } catch (const std::exception& e) {
                            row += ",,,,,,,error:" + error_kind(e);
                        }
                        csv += row + "\n";
                    }
                }
            }
        }
        std::size_t cmp = 0, win = 0, sum_hf = 0, sum_hfsc = 0;
        for (const auto& c : cells) {
            if (!c.have_hf || !c.have_hfsc) continue;
            csv += "# hf_vs_hfsc n=" + std::to_string(c.n) + " p=" +
                   std::to_string(c.p) + " seed=" + std::to_string(c.seed) +
                   " sweeps_hf=" + std::to_string(c.hf) +
                   " sweeps_hfsc=" + std::to_string(c.hfsc) + "\n";
            ++cmp;
            if (c.hfsc <= c.hf) ++win;
            sum_hf += c.hf;
            sum_hfsc += c.hfsc;
        }
        if (cmp > 0)
            csv += "# hf_vs_hfsc summary: hfsc<=hf in " + std::to_string(win) +
                   "/" + std::to_string(cmp) + " cells, total sweeps hf=" +
                   std::to_string(sum_hf) + " hfsc=" +
                   std::to_string(sum_hfsc) + "\n";
        if (ben_out.empty())
            std::cout << csv;
        else
            write_text(ben_out, csv);
    });

    // ---- pivot-trace ----------------------------------------------------
    std::size_t tr_p = 1;
    std::string tr_out;
    auto* tr = app.add_subcommand(
        "pivot-trace", "one sweep of the parallel pivot schedule as CSV");
    tr->add_option("--processes", tr_p, "worker count")->capture_default_str()
        ->check(CLI::Range(std::size_t{1}, std::size_t{1024}));
    tr->add_option("--out", tr_out, "CSV path (default: stdout)");
    tr->callback([&] {
        auto sched = sweep_schedule(tr_p);
        std::string csv = "step,rank,i_blk,j_blk\n";
        for (std::size_t s = 0; s < sched.size(); ++s)
            for (std::size_t r = 0; r < tr_p; ++r)
                csv += std::to_string(s) + "," + std::to_string(r) + "," +
                       std::to_string(sched[s][r].first) + "," +
                       std::to_string(sched[s][r].second) + "\n";
        if (tr_out.empty())
            std::cout << csv;
        else
            write_text(tr_out, csv);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    } catch (const non_convergence_error& e) {
        std::cerr << "error (non-convergence): " << e.what()
                  << " residual=" << fmt(e.residual) << "\n";
        return 2;
    } catch (const harness::io_error& e) {
        std::cerr << "error (io): " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error (" << error_kind(e) << "): " << e.what() << "\n";
        return 3;
    }
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) { return run_cli(argc, argv); }
