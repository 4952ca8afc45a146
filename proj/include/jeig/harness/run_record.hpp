#pragma once

#include <string>

#include "jeig/engine.hpp"

namespace jeig::harness {

// The solve subcommand's machine-readable result. Serializes to a fixed
// JSON shape: {variant, n, p, sweeps, stages, rotations, time_ms,
// metrics{orth_fro, orth_fro_rev, residual_rel, theorem1_bound,
// theorem1_pass}, eigenvalues_path} and round-trips losslessly (the JSON
// writer emits shortest-round-trip doubles).
struct RunRecord {
    Algorithm variant = Algorithm::TF;
    std::size_t n = 0;
    std::size_t p = 0;
    std::size_t sweeps = 0;
    std::size_t stages = 0;
    std::size_t rotations = 0;
    double time_ms = 0.0;
    MetricsBlock metrics;
    std::string eigenvalues_path;

    static RunRecord from_report(const SolveReport& rep,
                                 const std::string& eigenvalues_path);
};

std::string to_json_text(const RunRecord& rec);
RunRecord run_record_from_json_text(const std::string& text);

void write_run_record(const std::string& path, const RunRecord& rec);
RunRecord read_run_record(const std::string& path);

}  // namespace jeig::harness
