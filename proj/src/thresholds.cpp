#include "bdpp/thresholds.hpp"

#include <cmath>
#include <string>

#include "bdpp/errors.hpp"
#include "bdpp/integrator.hpp"
#include "bdpp/textio.hpp"

namespace bdpp {

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::kBothExtinct: return "BothExtinct";
        case Outcome::kPreyOnlyPersistence: return "PreyOnlyPersistence";
        case Outcome::kCoexistence: return "Coexistence";
        case Outcome::kUncovered: return "Uncovered";
        case Outcome::kInconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

namespace {

void check_mu(const Scenario& s, const StationaryLaw& mu) {
    if (static_cast<int>(mu.mu.size()) != s.num_regimes())
        throw DimensionMismatch("stationary law dimension does not match regime count");
}

GridSpec grid_from(const EstimationSettings& st) {
    return GridSpec{st.dt, st.horizon, st.record_stride};
}

double effective_burn_in(const EstimationSettings& st) {
    const GridSpec g = grid_from(st);
    return st.burn_in_fraction * static_cast<double>(g.num_steps()) * g.dt;
}

} // namespace

double threshold_t1(const Scenario& s, const StationaryLaw& mu) {
    check_mu(s, mu);
    double t1 = 0.0;
    for (int i = 0; i < s.num_regimes(); ++i) {
        const auto& r = s.regimes[static_cast<size_t>(i)];
        t1 += mu.mu[static_cast<size_t>(i)] * (r.a1 - 0.5 * r.alpha * r.alpha);
    }
    return t1;
}

double threshold_t2(const Scenario& s, const StationaryLaw& mu) {
    check_mu(s, mu);
    double t2 = 0.0;
    for (int i = 0; i < s.num_regimes(); ++i) {
        const auto& r = s.regimes[static_cast<size_t>(i)];
        t2 += mu.mu[static_cast<size_t>(i)] * (r.a2 + 0.5 * r.beta * r.beta - r.c2 / r.m2);
    }
    return t2;
}

TimeAverageEstimate estimate_lambda(const Scenario& s, const EstimationSettings& settings) {
    const StationaryLaw mu = stationary_law(s.generator);
    if (!(threshold_t1(s, mu) > 0.0))
        throw HypothesisViolated("lambda is defined only when T1 > 0 (phi recurrent)");
    const AuxPath path =
        simulate_auxiliary(s, Auxiliary::kPhi, grid_from(settings), settings.seed, 0);
    const auto& regimes = s.regimes;
    const auto integrand = [&regimes](double x, int i) {
        const auto& r = regimes[static_cast<size_t>(i)];
        return -r.a2 - 0.5 * r.beta * r.beta + r.c2 * x / (r.m1 + r.m2 * x);
    };
    return time_average(view(path), integrand, effective_burn_in(settings),
                        settings.batches);
}

TimeAverageEstimate estimate_lambda_bar(const Scenario& s,
                                        const TimeAverageEstimate& lambda,
                                        const EstimationSettings& settings) {
    const StationaryLaw mu = stationary_law(s.generator);
    if (!(threshold_t1(s, mu) > 0.0))
        throw HypothesisViolated("lambda_bar requires T1 > 0");
    const double t2 = threshold_t2(s, mu);
    if (!(t2 < 0.0))
        throw HypothesisViolated("lambda_bar requires T2 < 0 (psi recurrent)");
    const AuxPath path =
        simulate_auxiliary(s, Auxiliary::kPsi, grid_from(settings), settings.seed, 1);
    const auto& regimes = s.regimes;
    const auto integrand = [&regimes](double y, int i) {
        return regimes[static_cast<size_t>(i)].b2 * y;
    };
    const TimeAverageEstimate third =
        time_average(view(path), integrand, effective_burn_in(settings), settings.batches);

    TimeAverageEstimate out;
    out.value = lambda.value + t2 + third.value;
    out.half_width = lambda.half_width + third.half_width;  // conservative sum
    out.batches = settings.batches;
    out.burn_in = third.burn_in;
    return out;
}

double moment_bound(const Scenario& s, Auxiliary which, double p) {
    if (!(p > 1.0)) throw InvalidArgument("moment exponent must satisfy p > 1");
    const ParameterExtremes ext = parameter_extremes(s);
    if (which == Auxiliary::kPhi) {
        const double rate = ext.check.a1 + 0.5 * (p - 1.0) * ext.check.alpha * ext.check.alpha;
        return std::pow(rate / ext.hat.b1, p);
    }
    const double rate = -ext.hat.a2 + ext.check.c2 / ext.hat.m2 +
                        0.5 * (p - 1.0) * ext.check.beta * ext.check.beta;
    if (!(rate > 0.0))
        throw ConditionViolated(
            "psi moment bound needs -min a2 + max c2 / min m2 + (p-1)/2 max beta^2 > 0; "
            "got " + format_g17(rate) + " for p = " + format_g17(p));
    return std::pow(rate / ext.hat.b2, p);
}

double finite_time_moment_bound(const Scenario& s, Auxiliary which, double p, double t) {
    if (!(p > 1.0)) throw InvalidArgument("moment exponent must satisfy p > 1");
    if (!(t >= 0.0)) throw InvalidArgument("time must be nonnegative");
    const ParameterExtremes ext = parameter_extremes(s);
    double rate, b_min, initial;
    if (which == Auxiliary::kPhi) {
        rate = ext.check.a1 + 0.5 * (p - 1.0) * ext.check.alpha * ext.check.alpha;
        b_min = ext.hat.b1;
        initial = s.x0;
    } else {
        rate = -ext.hat.a2 + ext.check.c2 / ext.hat.m2 +
               0.5 * (p - 1.0) * ext.check.beta * ext.check.beta;
        b_min = ext.hat.b2;
        initial = s.y0;
    }
    // Bernoulli comparison ODE for E s_t^p; the formula below is its exact
    // solution, degenerating to 1/s0 + b t when the rate vanishes.
    double bracket;
    if (std::abs(rate) < 1e-12) {
        bracket = 1.0 / initial + b_min * t;
    } else {
        const double decay = std::exp(-rate * t);
        bracket = decay / initial + (b_min / rate) * (1.0 - decay);
    }
    return std::pow(bracket, -p);
}

Outcome decide_outcome(double t1, double t2,
                       const std::optional<TimeAverageEstimate>& lambda,
                       const std::optional<TimeAverageEstimate>& lambda_bar,
                       double band) {
    if (t1 < -band) return Outcome::kBothExtinct;
    if (t1 <= band) return Outcome::kInconclusive;
    if (!lambda) return Outcome::kInconclusive;
    const double lam_lo = lambda->value - lambda->half_width;
    const double lam_hi = lambda->value + lambda->half_width;
    if (lam_hi < 0.0) return Outcome::kPreyOnlyPersistence;
    if (lam_lo <= 0.0) return Outcome::kInconclusive;
    // lambda CI entirely above 0: the lambda_bar hypotheses decide the rest
    if (std::abs(t2) <= band) return Outcome::kInconclusive;
    if (t2 > band) return Outcome::kUncovered;  // psi transient, theorem silent
    if (!lambda_bar) return Outcome::kInconclusive;
    const double bar_lo = lambda_bar->value - lambda_bar->half_width;
    const double bar_hi = lambda_bar->value + lambda_bar->half_width;
    if (bar_lo > 0.0) return Outcome::kCoexistence;
    if (bar_hi < 0.0) return Outcome::kUncovered;  // lambda > 0 yet lambda_bar < 0
    return Outcome::kInconclusive;
}

ThresholdReport classify(const Scenario& s, const EstimationSettings& settings) {
    ThresholdReport rep;
    const StationaryLaw mu = stationary_law(s.generator);
    rep.t1 = threshold_t1(s, mu);
    rep.t2 = threshold_t2(s, mu);
    const double band = settings.epsilon_band;

    if (rep.t1 > band) {
        rep.lambda = estimate_lambda(s, settings);
        const double lam_lo = rep.lambda->value - rep.lambda->half_width;
        if (lam_lo > 0.0 && rep.t2 < -band) {
            rep.lambda_bar = estimate_lambda_bar(s, *rep.lambda, settings);
            rep.diagnostics.push_back("lambda_bar third term is a time average of an "
                                      "unbounded integrand: lower-bound-guaranteed only");
            if (s.num_regimes() == 1) {
                // with one regime lambda_bar equals lambda; report the residual
                const double gap = rep.lambda_bar->value - rep.lambda->value;
                rep.diagnostics.push_back(
                    "N=1 consistency: lambda_bar - lambda = " + format_g17(gap) +
                    " (combined CI " +
                    format_g17(rep.lambda->half_width + rep.lambda_bar->half_width) + ")");
            }
        }
    }
    rep.outcome = decide_outcome(rep.t1, rep.t2, rep.lambda, rep.lambda_bar, band);

    switch (rep.outcome) {
        case Outcome::kBothExtinct:
            rep.diagnostics.push_back("T1 = " + format_g17(rep.t1) +
                                      " < 0: prey and predator both die out");
            break;
        case Outcome::kPreyOnlyPersistence:
            rep.diagnostics.push_back(
                "lambda CI [" + format_g17(rep.lambda->value - rep.lambda->half_width) +
                ", " + format_g17(rep.lambda->value + rep.lambda->half_width) +
                "] entirely below 0: predator dies out, prey law converges to the phi "
                "stationary law");
            break;
        case Outcome::kCoexistence:
            rep.diagnostics.push_back(
                "lambda_bar CI [" +
                format_g17(rep.lambda_bar->value - rep.lambda_bar->half_width) + ", " +
                format_g17(rep.lambda_bar->value + rep.lambda_bar->half_width) +
                "] entirely above 0: coexistence with a stationary distribution");
            break;
        case Outcome::kUncovered:
            if (rep.t2 > band) {
                rep.diagnostics.push_back("T2 = " + format_g17(rep.t2) +
                                          " > 0 with lambda > 0: psi is transient, a "
                                          "region the classification does not address");
            } else {
                rep.diagnostics.push_back("lambda > 0 but lambda_bar CI entirely below 0: "
                                          "a region the classification does not address");
            }
            break;
        case Outcome::kInconclusive:
            if (std::abs(rep.t1) <= band) {
                rep.diagnostics.push_back("T1 = " + format_g17(rep.t1) +
                                          " lies inside the dead band around 0");
            } else if (rep.lambda && std::abs(rep.t2) <= band &&
                       rep.lambda->value - rep.lambda->half_width > 0.0) {
                rep.diagnostics.push_back("T2 = " + format_g17(rep.t2) +
                                          " lies inside the dead band around 0; "
                                          "lambda_bar hypotheses undecided");
            } else if (rep.lambda_bar) {
                rep.diagnostics.push_back(
                    "lambda_bar CI [" +
                    format_g17(rep.lambda_bar->value - rep.lambda_bar->half_width) + ", " +
                    format_g17(rep.lambda_bar->value + rep.lambda_bar->half_width) +
                    "] straddles 0");
            } else if (rep.lambda) {
                rep.diagnostics.push_back(
                    "lambda CI [" + format_g17(rep.lambda->value - rep.lambda->half_width) +
                    ", " + format_g17(rep.lambda->value + rep.lambda->half_width) +
                    "] straddles 0");
            }
            break;
    }
    return rep;
}

} // namespace bdpp
