#include "bdpp/report.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "bdpp/errors.hpp"
#include "bdpp/textio.hpp"

namespace bdpp {

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << contents;
    if (!out) throw IoError("failed writing '" + path + "'");
}

namespace {

nlohmann::ordered_json estimate_to_json(const TimeAverageEstimate& e) {
    nlohmann::ordered_json j;
    j["value"] = e.value;
    j["half_width"] = e.half_width;
    j["batches"] = e.batches;
    j["burn_in"] = e.burn_in;
    return j;
}

} // namespace

nlohmann::ordered_json config_to_json(const RunConfig& config,
                                      const std::vector<std::uint64_t>& seeds) {
    nlohmann::ordered_json j;
    j["scenario"] = config.scenario_path;
    j["horizon"] = config.horizon;
    j["dt"] = config.dt;
    j["burn_in_fraction"] = config.burn_in_fraction;
    j["batches"] = config.batches;
    j["replicas"] = config.replicas;
    j["base_seed"] = config.base_seed;
    j["out_dir"] = config.out_dir;
    if (!config.sweep_param.empty()) {
        j["sweep_param"] = config.sweep_param;
        j["sweep_values"] = config.sweep_values;
    }
    j["moment_p"] = config.moment_p;
    j["seeds"] = seeds;
    return j;
}

nlohmann::ordered_json report_to_json(const ThresholdReport& report,
                                      const RunConfig& config,
                                      const std::vector<std::uint64_t>& seeds) {
    nlohmann::ordered_json j;
    j["t1"] = report.t1;
    j["t2"] = report.t2;
    j["lambda"] = report.lambda ? estimate_to_json(*report.lambda)
                                : nlohmann::ordered_json(nullptr);
    j["lambda_bar"] = report.lambda_bar ? estimate_to_json(*report.lambda_bar)
                                        : nlohmann::ordered_json(nullptr);
    j["outcome"] = outcome_name(report.outcome);
    j["diagnostics"] = report.diagnostics;
    j["config"] = config_to_json(config, seeds);
    return j;
}

std::string report_to_text(const ThresholdReport& report) {
    std::string text;
    text += "T1 = " + format_g17(report.t1) + "\n";
    text += "T2 = " + format_g17(report.t2) + "\n";
    if (report.lambda) {
        text += "lambda     = " + format_g17(report.lambda->value) + " +/- " +
                format_g17(report.lambda->half_width) + "\n";
    } else {
        text += "lambda     : not estimated (hypothesis T1 > 0 not met or not needed)\n";
    }
    if (report.lambda_bar) {
        text += "lambda_bar = " + format_g17(report.lambda_bar->value) + " +/- " +
                format_g17(report.lambda_bar->half_width) +
                "  [third term lower-bound-guaranteed]\n";
    } else {
        text += "lambda_bar : not estimated (hypotheses T1 > 0, T2 < 0 not met or not needed)\n";
    }
    text += "outcome = ";
    text += outcome_name(report.outcome);
    text += "\n";
    for (const auto& d : report.diagnostics) text += "- " + d + "\n";
    return text;
}

} // namespace bdpp
