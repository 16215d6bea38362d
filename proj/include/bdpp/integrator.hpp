#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "bdpp/model.hpp"

namespace bdpp {

struct GridSpec {
    double dt = 1e-3;
    double horizon = 1.0;
    std::int64_t record_stride = 1;  // base steps between recorded samples

    // The horizon is rounded to a whole number of base steps.
    std::int64_t num_steps() const {
        const auto n = std::llround(horizon / dt);
        return n > 0 ? n : 1;
    }
};

// Coupled log-coordinate trajectories of the full system (X, Y) and its two
// dominating single-species processes (phi, psi), advanced with one switching
// path and one pair of Brownian increment streams. States are stored as logs:
// positivity of the originals is structural, and extinction (log -> -inf
// linearly) stays representable.
struct PathBundle {
    std::vector<double> times;
    std::vector<double> log_x, log_y, log_phi, log_psi;
    std::vector<int> regime;  // regime in force at each recorded time
    std::uint64_t seed = 0;
    std::uint32_t path_id = 0;
    GridSpec grid;
    // Order flips logX > logPhi or logY > logPsi, counted at every integration
    // step (not only recorded ones). Zero under the step-size condition.
    std::int64_t domination_violations = 0;
};

enum class Auxiliary { kPhi, kPsi };

struct AuxPath {
    std::vector<double> times;
    std::vector<double> log_value;
    std::vector<int> regime;
    std::uint64_t seed = 0;
    std::uint32_t path_id = 0;
    GridSpec grid;
    Auxiliary which = Auxiliary::kPhi;
};

// b * exp(z) with an exact zero when b == 0, so harness configurations with a
// switched-off competition term cannot produce 0 * inf.
inline double competition_term(double b, double log_state) {
    return b == 0.0 ? 0.0 : b * std::exp(log_state);
}

// Ito drift of ln X: a1 - alpha^2/2 - b1 x - c1 y / (m1 + m2 x + m3 y).
inline double log_drift_x(double log_x, double log_y, const RegimeParameterSet& r) {
    const double x = std::exp(log_x);
    const double y = std::exp(log_y);
    return r.a1 - 0.5 * r.alpha * r.alpha - competition_term(r.b1, log_x)
         - r.c1 * y / (r.m1 + r.m2 * x + r.m3 * y);
}

// Ito drift of ln Y: -a2 - beta^2/2 - b2 y + c2 x / (m1 + m2 x + m3 y).
inline double log_drift_y(double log_x, double log_y, const RegimeParameterSet& r) {
    const double x = std::exp(log_x);
    const double y = std::exp(log_y);
    return -r.a2 - 0.5 * r.beta * r.beta - competition_term(r.b2, log_y)
         + r.c2 * x / (r.m1 + r.m2 * x + r.m3 * y);
}

// Ito drift of ln phi: a1 - alpha^2/2 - b1 phi  (prey freed of predation).
inline double log_drift_phi(double log_phi, const RegimeParameterSet& r) {
    return r.a1 - 0.5 * r.alpha * r.alpha - competition_term(r.b1, log_phi);
}

// Ito drift of ln psi: -a2 + c2/m2 - beta^2/2 - b2 psi  (predator fed the
// saturation limit of the response).
inline double log_drift_psi(double log_psi, const RegimeParameterSet& r) {
    return -r.a2 + r.c2 / r.m2 - 0.5 * r.beta * r.beta - competition_term(r.b2, log_psi);
}

// Euler-Maruyama in log coordinates on the union of the uniform grid and the
// exact switching jump times; all four processes share the switching path and
// the Brownian increments (B2 = rho B1 + sqrt(1-rho^2) B_perp). Deterministic
// given (seed, path_id). Throws StepTooLarge when a dominating process exceeds
// the step-size cap that guarantees pathwise ordering, NonFiniteState on
// overflow.
PathBundle simulate_bundle(const Scenario& s, const GridSpec& grid, std::uint64_t seed,
                           std::uint32_t path_id = 0);

// Same recursion restricted to one auxiliary process; with identical
// (seed, path_id) the series reproduces the corresponding bundle series
// bit for bit.
AuxPath simulate_auxiliary(const Scenario& s, Auxiliary which, const GridSpec& grid,
                           std::uint64_t seed, std::uint32_t path_id = 0);

// CSV export: header row, then one line per recorded sample with columns
// time, regime, logX, logY, logPhi, logPsi at 17 significant digits.
void write_bundle_csv(const PathBundle& bundle, const std::string& path);

} // namespace bdpp
