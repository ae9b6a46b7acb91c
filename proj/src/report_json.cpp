#include "gpgate/report_json.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace gpgate {

using nlohmann::json;

nlohmann::json to_json(const GateReport& report) {
    json cases = json::array();
    for (const CaseResult& r : report.per_case) {
        cases.push_back(json{{"readout", r.readout},
                             {"deviation", r.deviation},
                             {"non_finite", r.non_finite}});
    }
    return json{{"per_case", cases},
                {"max_deviation", report.max_deviation},
                {"threshold", report.threshold},
                {"pass", report.pass}};
}

nlohmann::json to_json(const VerificationReport& report) {
    const ReferenceParams& ref = report.constants;
    json constants{{"alpha", ref.alpha},
                   {"tau_final", ref.tau_final},
                   {"dtau", ref.dtau},
                   {"potential",
                    json{{"v00", ref.potential[0]},
                         {"v01", ref.potential[1]},
                         {"v10", ref.potential[2]},
                         {"v11", ref.potential[3]}}},
                   {"quoted_deviations", ref.quoted_deviations}};

    json schemes = json::array();
    for (const SchemeVerification& sv : report.schemes) {
        json readings = json::array();
        for (const ReadingResult& rr : sv.readings) {
            readings.push_back(json{{"reading", to_string(rr.reading)},
                                    {"deviations", rr.deviations},
                                    {"thresholded", rr.thresholded},
                                    {"within_relaxed_bound", rr.within(report.relaxed_bound)},
                                    {"truth_table_ok",
                                     rr.truth_table_matches(GateSpec::nor())}});
        }
        json amps = json::array();
        for (const Complex& a : sv.readout_amplitudes) {
            amps.push_back(json{{"re", a.real()}, {"im", a.imag()}});
        }
        schemes.push_back(json{{"scheme", to_string(sv.scheme)},
                               {"readout_amplitudes", amps},
                               {"readings", readings}});
    }

    return json{{"constants", constants},
                {"relaxed_bound", report.relaxed_bound},
                {"schemes", schemes},
                {"deviation_pass", report.deviation_pass},
                {"truth_table_pass", report.truth_table_pass},
                {"quoted_figures_match", report.quoted_figures_match},
                {"pass", report.pass}};
}

nlohmann::json to_json(const SynthesisResult& result) {
    json history = json::array();
    for (const RestartRecord& r : result.history) {
        history.push_back(json{{"restart", r.restart}, {"best_error", r.best_error}});
    }
    return json{{"best", json{{"alpha", result.best_vector[0]},
                              {"tau_final", result.best_vector[1]},
                              {"v00", result.best_vector[2]},
                              {"v01", result.best_vector[3]},
                              {"v10", result.best_vector[4]},
                              {"v11", 0.0}}},
                {"coarse_error", result.best_coarse_error},
                {"fine_report", to_json(result.best_report)},
                {"evaluations_used", result.evaluations_used},
                {"history", history},
                {"target_met", result.target_met}};
}

void write_text_file(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << contents;
        if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

}  // namespace gpgate
