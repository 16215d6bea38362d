#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bdpp/ergodics.hpp"
#include "bdpp/model.hpp"

namespace bdpp {

// One settings bundle shared by both estimators so a report is reproducible
// from its echo.
struct EstimationSettings {
    double horizon = 1e4;
    double dt = 1e-3;
    double burn_in_fraction = 0.1;
    int batches = 20;
    std::int64_t record_stride = 100;
    std::uint64_t seed = 0;
    double epsilon_band = 1e-9;  // dead band around 0 for the exact thresholds
};

enum class Outcome {
    kBothExtinct,
    kPreyOnlyPersistence,
    kCoexistence,
    kUncovered,      // parameter region the classification theorem leaves open
    kInconclusive,
};

const char* outcome_name(Outcome o);

struct ThresholdReport {
    double t1 = 0.0;
    double t2 = 0.0;
    std::optional<TimeAverageEstimate> lambda;      // present only when t1 > band
    std::optional<TimeAverageEstimate> lambda_bar;  // needs t1 > band and t2 < -band
    Outcome outcome = Outcome::kInconclusive;
    std::vector<std::string> diagnostics;
};

// T1 = sum_i mu_i (a1(i) - alpha(i)^2 / 2): sign decides prey survival.
double threshold_t1(const Scenario& s, const StationaryLaw& mu);

// T2 = sum_i mu_i (a2(i) + beta(i)^2 / 2 - c2(i)/m2(i)): sign decides
// recurrence of the dominating predator process.
double threshold_t2(const Scenario& s, const StationaryLaw& mu);

// lambda = time average over a long phi path of
//   -a2(i) - beta(i)^2/2 + c2(i) x / (m1(i) + m2(i) x),
// a bounded integrand, so the ergodic average converges two-sidedly.
// Requires T1 > 0 (phi recurrent), else HypothesisViolated.
TimeAverageEstimate estimate_lambda(const Scenario& s, const EstimationSettings& settings);

// lambda_bar = lambda + T2 + time average of b2(i) psi over a long psi path.
// The third term is unbounded, so only its liminf is guaranteed; half-widths
// are added conservatively. Requires T1 > 0 and T2 < 0.
TimeAverageEstimate estimate_lambda_bar(const Scenario& s,
                                        const TimeAverageEstimate& lambda,
                                        const EstimationSettings& settings);

// Asymptotic p-th moment bound of the dominating processes:
//   phi: (min b1 / (max a1 + (p-1)/2 max alpha^2))^(-p)
//   psi: (min b2 / (-min a2 + max c2 / min m2 + (p-1)/2 max beta^2))^(-p),
// the psi form only when its rate is positive (else ConditionViolated).
double moment_bound(const Scenario& s, Auxiliary which, double p);

// Finite-time version of the same comparison-ODE bound; equals the initial
// moment at t = 0.
double finite_time_moment_bound(const Scenario& s, Auxiliary which, double p, double t);

// Pure decision table over the computed quantities. Estimates enter as CIs
// [value - half_width, value + half_width]; lambda_bar may be absent when its
// hypotheses fail.
Outcome decide_outcome(double t1, double t2,
                       const std::optional<TimeAverageEstimate>& lambda,
                       const std::optional<TimeAverageEstimate>& lambda_bar,
                       double epsilon_band);

// Full decision procedure: exact thresholds, then conditional lambda /
// lambda_bar estimation, mapped onto the outcome table. Boundary values
// within epsilon_band of zero are reported Inconclusive rather than guessed.
ThresholdReport classify(const Scenario& s, const EstimationSettings& settings);

} // namespace bdpp
