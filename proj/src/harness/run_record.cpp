#include "jeig/harness/run_record.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "json.hpp"

#include "jeig/harness/mat_io.hpp"

namespace jeig::harness {

namespace {
std::string lower_name(Algorithm a) {
    std::string s = algorithm_name(a);
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}
}  // namespace

RunRecord RunRecord::from_report(const SolveReport& rep,
                                 const std::string& eigenvalues_path) {
    RunRecord rec;
    rec.variant = rep.variant;
    rec.n = rep.n;
    rec.p = rep.p;
    rec.sweeps = rep.sweeps;
    rec.stages = rep.stages;
    rec.rotations = rep.rotations;
    rec.time_ms = rep.time_ms;
    rec.metrics = rep.metrics;
    rec.eigenvalues_path = eigenvalues_path;
    return rec;
}

std::string to_json_text(const RunRecord& rec) {
    nlohmann::json j{
        {"variant", lower_name(rec.variant)},
        {"n", rec.n},
        {"p", rec.p},
        {"sweeps", rec.sweeps},
        {"stages", rec.stages},
        {"rotations", rec.rotations},
        {"time_ms", rec.time_ms},
        {"metrics",
         {{"orth_fro", rec.metrics.orth_fro},
          {"orth_fro_rev", rec.metrics.orth_fro_rev},
          {"residual_rel", rec.metrics.residual_rel},
          {"theorem1_bound", rec.metrics.theorem1_bound},
          {"theorem1_pass", rec.metrics.theorem1_pass}}},
        {"eigenvalues_path", rec.eigenvalues_path},
    };
    return j.dump(2) + "\n";
}

RunRecord run_record_from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    RunRecord rec;
    rec.variant = algorithm_from_name(j.at("variant").get<std::string>());
    rec.n = j.at("n").get<std::size_t>();
    rec.p = j.at("p").get<std::size_t>();
    rec.sweeps = j.at("sweeps").get<std::size_t>();
    rec.stages = j.at("stages").get<std::size_t>();
    rec.rotations = j.at("rotations").get<std::size_t>();
    rec.time_ms = j.at("time_ms").get<double>();
    const auto& m = j.at("metrics");
    rec.metrics.orth_fro = m.at("orth_fro").get<double>();
    rec.metrics.orth_fro_rev = m.at("orth_fro_rev").get<double>();
    rec.metrics.residual_rel = m.at("residual_rel").get<double>();
    rec.metrics.theorem1_bound = m.at("theorem1_bound").get<double>();
    rec.metrics.theorem1_pass = m.at("theorem1_pass").get<bool>();
    rec.eigenvalues_path = j.at("eigenvalues_path").get<std::string>();
    return rec;
}

void write_run_record(const std::string& path, const RunRecord& rec) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << to_json_text(rec);
    if (!out) throw io_error("write failed: " + path);
}

RunRecord read_run_record(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open: " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    try {
        return run_record_from_json_text(text);
    } catch (const nlohmann::json::exception& e) {
        throw io_error("bad run record " + path + ": " + e.what());
    }
}

}  // namespace jeig::harness
