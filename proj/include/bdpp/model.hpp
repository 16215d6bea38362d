#pragma once

#include <array>
#include <vector>

#include "bdpp/ctmc.hpp"

namespace bdpp {

// Coefficients of one environmental regime. All strictly positive.
//   prey:     dX = X (a1 - b1 X - c1 Y / (m1 + m2 X + m3 Y)) dt + alpha X dB1
//   predator: dY = Y (-a2 - b2 Y + c2 X / (m1 + m2 X + m3 Y)) dt + beta Y dB2
struct RegimeParameterSet {
    double a1 = 1.0;     // prey growth rate            [1/time]
    double b1 = 1.0;     // prey self-competition       [1/(time*density)]
    double c1 = 1.0;     // predation coefficient       [1/time]
    double a2 = 1.0;     // predator death rate         [1/time]
    double b2 = 1.0;     // predator self-competition   [1/(time*density)]
    double c2 = 1.0;     // conversion coefficient      [1/time]
    double m1 = 1.0;     // response saturation constant
    double m2 = 1.0;     // prey interference           [1/density]
    double m3 = 1.0;     // predator interference       [1/density]
    double alpha = 0.0;  // prey noise intensity        [1/sqrt(time)]
    double beta = 0.0;   // predator noise intensity    [1/sqrt(time)]
};

struct CoefficientField {
    const char* name;
    double RegimeParameterSet::* member;
};

inline constexpr std::array<CoefficientField, 11> kCoefficientFields{{
    {"a1", &RegimeParameterSet::a1},
    {"b1", &RegimeParameterSet::b1},
    {"c1", &RegimeParameterSet::c1},
    {"a2", &RegimeParameterSet::a2},
    {"b2", &RegimeParameterSet::b2},
    {"c2", &RegimeParameterSet::c2},
    {"m1", &RegimeParameterSet::m1},
    {"m2", &RegimeParameterSet::m2},
    {"m3", &RegimeParameterSet::m3},
    {"alpha", &RegimeParameterSet::alpha},
    {"beta", &RegimeParameterSet::beta},
}};

// Full problem description: regimes, switching generator, initial state.
// Immutable after validation; safe to share across simulation workers.
struct Scenario {
    std::vector<RegimeParameterSet> regimes;
    GeneratorMatrix generator;
    double x0 = 1.0;
    double y0 = 1.0;
    int initial_regime = 0;  // 0-based here; scenario files use 1-based indices
    double rho = 0.0;        // correlation between the two Brownian drivers

    int num_regimes() const { return static_cast<int>(regimes.size()); }
};

// Componentwise extremes over regimes: hat = min, check = max.
struct ParameterExtremes {
    RegimeParameterSet hat;
    RegimeParameterSet check;
};

// Throws NonPositiveParameter / DimensionMismatch / InvalidInitialCondition,
// and forwards generator failures (InvalidGenerator subtypes). Idempotent.
Scenario validate_scenario(const Scenario& raw);

ParameterExtremes parameter_extremes(const Scenario& s);

} // namespace bdpp
