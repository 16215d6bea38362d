#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "bdpp/cli.hpp"
#include "bdpp/thresholds.hpp"

namespace bdpp {

// Machine-readable classification report: JSON with a fixed key order, so a
// rerun with an identical config reproduces the file byte for byte.
nlohmann::ordered_json report_to_json(const ThresholdReport& report,
                                      const RunConfig& config,
                                      const std::vector<std::uint64_t>& seeds);

std::string report_to_text(const ThresholdReport& report);

nlohmann::ordered_json config_to_json(const RunConfig& config,
                                      const std::vector<std::uint64_t>& seeds);

} // namespace bdpp
