#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "bdpp/model.hpp"

namespace bdpp {

// Scenario file schema (JSON):
//   {
//     "regimes": [ {"a1":..,"b1":..,"c1":..,"a2":..,"b2":..,"c2":..,
//                   "m1":..,"m2":..,"m3":..,"alpha":..,"beta":..}, ... ],
//     "generator": [[..],[..]],        N x N row-major rates
//     "x0": .., "y0": ..,
//     "initial_regime": 1,             1-based, optional (default 1)
//     "rho": 0.0                       optional (default 0)
//   }
// Unknown keys are rejected. Parsing performs no validation beyond shape;
// run validate_scenario on the result.
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::ordered_json scenario_to_json(const Scenario& s);

Scenario load_scenario(const std::string& path);            // IoError / ParseError
void save_scenario(const Scenario& s, const std::string& path);

} // namespace bdpp
