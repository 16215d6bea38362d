// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Every run is fully seeded and deterministic.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "bdpp/cli.hpp"
#include "bdpp/ergodics.hpp"
#include "bdpp/errors.hpp"
#include "bdpp/integrator.hpp"
#include "bdpp/parallel.hpp"
#include "bdpp/scenario_io.hpp"
#include "bdpp/thresholds.hpp"
#include "support/helpers.hpp"

using namespace bdpp;
using namespace testsupport;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& details,
            double seconds) {
    std::printf("[%s] criterion %2d: %s — %s (%.1f s)\n", pass ? "PASS" : "FAIL", id,
                name.c_str(), details.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++failures;
}

void run(int id, const std::string& name, const std::function<std::pair<bool, std::string>()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string details;
    try {
        std::tie(pass, details) = fn();
    } catch (const std::exception& e) {
        pass = false;
        details = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(id, name, pass, details, secs);
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------
// 1. CTMC correctness: mu vs dense oracle, occupation fractions vs mu.
std::pair<bool, std::string> criterion_ctmc() {
    Draw draw(101);
    int mu_ok = 0, occ_ok = 0;
    const int trials = 50;
    for (int trial = 0; trial < trials; ++trial) {
        const int n = draw.uniform_int(2, 5);
        const GeneratorMatrix g = random_irreducible_generator(draw, n);
        const auto mu = stationary_law(g);
        const auto ref = stationary_oracle(g);
        bool close = true;
        for (int i = 0; i < n; ++i)
            if (std::abs(mu.mu[static_cast<size_t>(i)] - ref[static_cast<size_t>(i)]) > 1e-10)
                close = false;
        mu_ok += close ? 1 : 0;

        const auto path =
            sample_switching_path(g, 0, 1e4, 4000 + static_cast<std::uint64_t>(trial));
        const auto frac = occupation_fractions(path);
        const auto se = occupation_batch_se(path, n, 20);
        bool within = true;
        for (int i = 0; i < n; ++i)
            if (std::abs(frac[static_cast<size_t>(i)] - mu.mu[static_cast<size_t>(i)]) >
                3.0 * se[static_cast<size_t>(i)])
                within = false;
        occ_ok += within ? 1 : 0;
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "mu within 1e-10 of oracle: %d/50; occupation within 3 SE: %d/50",
                  mu_ok, occ_ok);
    return {mu_ok == trials && occ_ok >= 47, buf};
}

// ---------------------------------------------------------------------------
// 2. Positivity & domination over 100 bundles x 1e6 steps.
std::pair<bool, std::string> criterion_domination() {
    const int bundles = 100;
    std::vector<std::int64_t> violations(bundles, -1);
    std::vector<char> finite(bundles, 0);
    Draw draw(202);
    std::vector<Scenario> scenarios;
    for (int i = 0; i < bundles; ++i)
        scenarios.push_back(validate_scenario(random_scenario(draw)));

    run_indexed(bundles, [&](int i) {
        const GridSpec grid{1e-3, 1000.0, 10000};  // 1e6 base steps
        const PathBundle b = simulate_bundle(scenarios[static_cast<size_t>(i)], grid,
                                             5000 + static_cast<std::uint64_t>(i));
        violations[static_cast<size_t>(i)] = b.domination_violations;
        bool all_finite = true;
        for (size_t k = 0; k < b.times.size(); ++k)
            if (!std::isfinite(b.log_x[k]) || !std::isfinite(b.log_y[k]) ||
                !std::isfinite(b.log_phi[k]) || !std::isfinite(b.log_psi[k]))
                all_finite = false;
        finite[static_cast<size_t>(i)] = all_finite ? 1 : 0;
    });

    std::int64_t total = 0;
    int finite_count = 0;
    for (int i = 0; i < bundles; ++i) {
        total += violations[static_cast<size_t>(i)];
        finite_count += finite[static_cast<size_t>(i)];
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "domination violations: %lld; bundles with all-finite logs: %d/100",
                  static_cast<long long>(total), finite_count);
    return {total == 0 && finite_count == bundles, buf};
}

// ---------------------------------------------------------------------------
// 3. Deterministic oracle: noise-free integration vs independent RK4.
std::pair<bool, std::string> criterion_ode_oracle() {
    RegimeParameterSet r;
    r.a1 = 1.0; r.b1 = 1.0; r.c1 = 0.5;
    r.a2 = 0.5; r.b2 = 0.5; r.c2 = 1.0;
    r.m1 = 1.0; r.m2 = 1.0; r.m3 = 1.0;
    r.alpha = 0.0; r.beta = 0.0;
    const Scenario s = single_regime_scenario(r, 0.8, 0.3);
    const GridSpec grid{1e-4, 10.0, 10000};
    const PathBundle b = simulate_bundle(s, grid, 1);

    double x = s.x0, y = s.y0;
    rk4_reference(r, x, y, 10.0, 1e-4);
    const double rel_x = std::abs(std::exp(b.log_x.back()) - x) / x;
    const double rel_y = std::abs(std::exp(b.log_y.back()) - y) / y;
    char buf[120];
    std::snprintf(buf, sizeof(buf), "relative error at t=10: x %.2e, y %.2e", rel_x, rel_y);
    return {rel_x < 1e-4 && rel_y < 1e-4, buf};
}

// ---------------------------------------------------------------------------
// 4. Extinction regime: slopes of both log series decisively negative.
std::pair<bool, std::string> criterion_extinction() {
    RegimeParameterSet r = unit_regime();
    r.a1 = 0.5;
    r.alpha = 1.2;  // T1 = -0.22
    r.beta = 0.2;
    const Scenario s = validate_scenario(single_regime_scenario(r));
    const double t1 = threshold_t1(s, stationary_law(s.generator));

    const int replicas = 32;
    const GridSpec grid{1e-3, 1e4, 100};
    std::vector<SlopeEstimate> sx(replicas), sy(replicas);
    run_indexed(replicas, [&](int i) {
        const PathBundle b =
            simulate_bundle(s, grid, 600, static_cast<std::uint32_t>(i));
        sx[static_cast<size_t>(i)] = lyapunov_slope(view_x(b), 5e3, 1e4);
        sy[static_cast<size_t>(i)] = lyapunov_slope(view_y(b), 5e3, 1e4);
    });

    int x_ok = 0, y_ok = 0;
    for (int i = 0; i < replicas; ++i) {
        const auto& ex = sx[static_cast<size_t>(i)];
        const auto& ey = sy[static_cast<size_t>(i)];
        if (ex.slope < t1 + 0.05 && ex.slope + ex.half_width < 0.0) ++x_ok;
        if (ey.slope < 0.0 && ey.slope + ey.half_width < 0.0) ++y_ok;
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "slope(logX) < T1+0.05 with CI<0: %d/32; slope(logY) CI<0: %d/32",
                  x_ok, y_ok);
    return {x_ok >= 30 && y_ok >= 30, buf};
}

// ---------------------------------------------------------------------------
// 5. Prey-only regime: predator slope negative, X matches the phi law.
std::pair<bool, std::string> criterion_prey_only() {
    Scenario s = rainy_dry_scenario();  // T1 = 0.2875 > 0
    for (auto& reg : s.regimes) {
        reg.a2 = 1.0;
        reg.c2 = 0.05;  // envelope: lambda <= -(a2 + beta^2/2) + c2/m2 < 0
    }
    s = validate_scenario(s);

    PathBundle bundle;
    AuxPath phi;
    run_indexed(2, [&](int which) {
        const GridSpec grid{1e-3, 1e4, 100};
        if (which == 0)
            bundle = simulate_bundle(s, grid, 71);
        else
            phi = simulate_auxiliary(s, Auxiliary::kPhi, grid, 72);
    });

    const SlopeEstimate sy = lyapunov_slope(view_y(bundle), 5e3, 1e4);
    const bool slope_ok = sy.slope + sy.half_width < 0.0;

    // shared log-spaced bins spanning both windows
    const SeriesView x_view = view_x(bundle).slice_time(7.5e3, 1e18);
    const SeriesView phi_view = view(phi).slice_time(1e3, 1e18);
    double lo = 1e300, hi = -1e300;
    for (double v : x_view.log_values) { lo = std::min(lo, v); hi = std::max(hi, v); }
    for (double v : phi_view.log_values) { lo = std::min(lo, v); hi = std::max(hi, v); }
    const int bins = 24;
    std::vector<double> edges(static_cast<size_t>(bins) + 1);
    for (int i = 0; i <= bins; ++i)
        edges[static_cast<size_t>(i)] = std::exp(lo + (hi - lo) * i / bins);
    const auto hist_x = empirical_stationary(x_view, edges);
    const auto hist_phi = empirical_stationary(phi_view, edges);
    const double tv = total_variation(hist_x, hist_phi);

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "slope(logY) CI upper %.4f; TV(X final quarter, phi run) = %.4f",
                  sy.slope + sy.half_width, tv);
    return {slope_ok && tv < 0.1, buf};
}

// ---------------------------------------------------------------------------
// 6. Coexistence regime: predator time average beats the coexistence bound.
std::pair<bool, std::string> criterion_coexistence() {
    RegimeParameterSet r = unit_regime();
    r.a1 = 1.0; r.b1 = 0.5; r.alpha = 0.3;
    r.a2 = 0.2; r.b2 = 0.3; r.beta = 0.2;
    r.c2 = 2.0;  // pinned from a c2 sweep: lambda_bar CI separates from 0 here
    const Scenario s = validate_scenario(single_regime_scenario(r));

    EstimationSettings settings;
    settings.horizon = 1e4;
    settings.dt = 1e-3;
    settings.burn_in_fraction = 0.1;
    settings.batches = 20;
    settings.record_stride = 100;
    settings.seed = 81;
    const ThresholdReport rep = classify(s, settings);
    if (rep.outcome != Outcome::kCoexistence || !rep.lambda_bar)
        return {false, std::string("expected Coexistence, got ") + outcome_name(rep.outcome)};
    const double bar = rep.lambda_bar->value;
    const double bar_hw = rep.lambda_bar->half_width;
    if (!(bar - bar_hw > 0.0)) return {false, "lambda_bar CI not separated from 0"};

    const GridSpec grid{1e-3, 1e4, 100};
    const PathBundle b = simulate_bundle(s, grid, 82);
    const auto y_avg = time_average(
        view_y(b), [](double y, int) { return y; }, 5e3, 20);
    const SlopeEstimate sx = lyapunov_slope(view_x(b), 5e3, 1e4);
    const SlopeEstimate sy = lyapunov_slope(view_y(b), 5e3, 1e4);

    const ParameterExtremes ext = parameter_extremes(s);
    const double coeff =
        (ext.hat.m1 / ext.check.c2) /
        (ext.check.m3 / ext.hat.m2 + ext.check.b2 * ext.hat.m1 / ext.check.c2 +
         ext.check.c1 / (ext.hat.m1 * ext.hat.b1));
    const double bound = coeff * bar;
    const double ci = coeff * bar_hw + y_avg.half_width;

    const bool avg_ok = y_avg.value >= bound - 3.0 * ci;
    const bool slopes_ok = std::abs(sx.slope) <= sx.half_width &&
                           std::abs(sy.slope) <= sy.half_width;
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "avg Y %.3f >= bound %.3f - 3CI; slopes (%.2e±%.2e, %.2e±%.2e) cover 0",
                  y_avg.value, bound, sx.slope, sx.half_width, sy.slope, sy.half_width);
    return {avg_ok && slopes_ok, buf};
}

// ---------------------------------------------------------------------------
// 7. Moment bounds on random scenarios.
std::pair<bool, std::string> criterion_moments() {
    Draw draw(707);
    int checks = 0, passed = 0;
    for (int trial = 0; trial < 10; ++trial) {
        Scenario s = random_scenario(draw);
        for (auto& reg : s.regimes) {
            // keep the psi exponent condition comfortably valid at p = 2
            reg.a2 = draw.uniform(0.1, 0.5);
            reg.c2 = draw.uniform(1.0, 2.0);
            reg.m2 = draw.uniform(0.5, 1.0);
        }
        s = validate_scenario(s);
        const double p = 2.0;
        const int replicas = 48;
        const GridSpec grid{1e-3, 100.0, 10000};  // records every 10 time units

        for (Auxiliary which : {Auxiliary::kPhi, Auxiliary::kPsi}) {
            std::vector<AuxPath> paths(replicas);
            run_indexed(replicas, [&](int i) {
                paths[static_cast<size_t>(i)] =
                    simulate_auxiliary(s, which, grid, 7000 + static_cast<std::uint64_t>(trial),
                                       static_cast<std::uint32_t>(i));
            });
            const auto& times = paths[0].times;
            for (double target : {10.0, 50.0, 100.0}) {
                size_t idx = 0;
                for (size_t k = 0; k < times.size(); ++k)
                    if (std::abs(times[k] - target) < std::abs(times[idx] - target)) idx = k;
                std::vector<double> logs(replicas);
                for (int i = 0; i < replicas; ++i)
                    logs[static_cast<size_t>(i)] = paths[static_cast<size_t>(i)].log_value[idx];
                const MomentEstimate est = ensemble_moment(logs, p);
                const double fin = finite_time_moment_bound(s, which, p, times[idx]);
                ++checks;
                bool ok = est.value <= fin + 3.0 * est.std_error;
                if (target == 100.0) {
                    const double asym = moment_bound(s, which, p);
                    ok = ok && est.value <= asym + 3.0 * est.std_error;
                }
                passed += ok ? 1 : 0;
            }
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf), "moment checks passed: %d/%d", passed, checks);
    return {passed == checks, buf};
}

// ---------------------------------------------------------------------------
// 8. N = 1 identity: lambda_bar equals lambda within combined CI.
std::pair<bool, std::string> criterion_n1_identity() {
    Draw draw(808);
    int ok = 0;
    const int trials = 5;
    for (int trial = 0; trial < trials; ++trial) {
        RegimeParameterSet r = unit_regime();
        r.a1 = draw.uniform(0.8, 1.2);
        r.b1 = draw.uniform(0.4, 1.0);
        r.alpha = draw.uniform(0.2, 0.5);  // T1 > 0.67
        r.a2 = draw.uniform(0.1, 0.3);
        r.beta = draw.uniform(0.1, 0.3);
        r.b2 = draw.uniform(0.3, 0.8);
        r.c2 = draw.uniform(1.5, 2.5);
        r.m2 = draw.uniform(0.8, 1.2);  // T2 <= 0.345 - 1.25 < 0
        r.c1 = draw.uniform(0.2, 0.8);
        const Scenario s = validate_scenario(single_regime_scenario(r));

        EstimationSettings settings;
        settings.horizon = 1e4;
        settings.dt = 1e-3;
        settings.record_stride = 100;
        settings.seed = 8100 + static_cast<std::uint64_t>(trial);
        const auto lam = estimate_lambda(s, settings);
        const auto bar = estimate_lambda_bar(s, lam, settings);
        if (std::abs(bar.value - lam.value) < lam.half_width + bar.half_width) ++ok;
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf), "|lambda_bar - lambda| under combined CI: %d/%d", ok,
                  trials);
    return {ok >= 4, buf};
}

// ---------------------------------------------------------------------------
// 9. Reproducibility: identical configs give byte-identical artifacts.
std::pair<bool, std::string> criterion_reproducibility() {
    const auto dir = std::filesystem::temp_directory_path() / "bdpp_acceptance_repro";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);

    RegimeParameterSet r = unit_regime();
    r.a1 = 1.0; r.b1 = 0.5; r.alpha = 0.3;
    r.a2 = 0.2; r.b2 = 0.3; r.beta = 0.2; r.c2 = 2.0;
    const auto scenario_file = dir / "scenario.json";
    save_scenario(single_regime_scenario(r), scenario_file.string());

    RunConfig cfg;
    cfg.scenario_path = scenario_file.string();
    cfg.horizon = 200.0;
    cfg.dt = 1e-3;
    cfg.batches = 10;
    cfg.replicas = 2;
    cfg.base_seed = 91;
    cfg.out_dir = (dir / "out").string();
    cfg.sweep_param = "regimes[1].c2";
    cfg.sweep_values = {0.05, 2.0};
    cfg.moment_p = 2.0;

    RunConfig moments_cfg = cfg;  // the moment ladder needs >= 30 replicas
    moments_cfg.replicas = 32;
    moments_cfg.horizon = 50.0;

    const std::vector<std::string> artifacts{"report.json",  "report.txt",
                                             "run_config.json", "sweep.csv",
                                             "moments.csv",  "summary.json",
                                             "path_000.csv", "path_001.csv"};
    auto run_all = [&]() {
        if (cmd_classify(cfg) != 0) throw Error("classify failed");
        if (cmd_simulate(cfg) != 0) throw Error("simulate failed");
        if (cmd_sweep(cfg) != 0) throw Error("sweep failed");
        if (cmd_moments(moments_cfg) != 0) throw Error("moments failed");
    };

    run_all();
    std::vector<std::string> first;
    for (const auto& a : artifacts) first.push_back(read_file(dir / "out" / a));
    run_all();
    int identical = 0;
    for (size_t i = 0; i < artifacts.size(); ++i)
        if (read_file(dir / "out" / artifacts[i]) == first[i]) ++identical;

    std::filesystem::remove_all(dir);
    char buf[120];
    std::snprintf(buf, sizeof(buf), "byte-identical artifacts on rerun: %d/%zu", identical,
                  artifacts.size());
    return {identical == static_cast<int>(artifacts.size()), buf};
}

// ---------------------------------------------------------------------------
// 10. Scale invariance under kappa = 3 with the grid scaled alongside.
std::pair<bool, std::string> criterion_scale_invariance() {
    std::vector<Scenario> scenarios;
    Draw draw(1010);
    for (int i = 0; i < 4; ++i) {  // decisively extinct
        RegimeParameterSet r = unit_regime();
        r.a1 = draw.uniform(0.3, 0.6);
        r.alpha = draw.uniform(1.2, 1.6);
        r.beta = draw.uniform(0.2, 0.4);
        scenarios.push_back(validate_scenario(single_regime_scenario(r)));
    }
    for (int i = 0; i < 3; ++i) {  // decisively prey-only
        RegimeParameterSet r = unit_regime();
        r.a1 = draw.uniform(0.9, 1.2);
        r.b1 = 0.5;
        r.alpha = draw.uniform(0.2, 0.4);
        r.a2 = 1.0;
        r.beta = 0.2;
        r.c2 = 0.05;
        scenarios.push_back(validate_scenario(single_regime_scenario(r)));
    }
    for (int i = 0; i < 3; ++i) {  // decisively coexistent
        RegimeParameterSet r = unit_regime();
        r.a1 = draw.uniform(0.9, 1.2);
        r.b1 = 0.5;
        r.alpha = 0.3;
        r.a2 = 0.2;
        r.b2 = 0.3;
        r.beta = 0.2;
        r.c2 = draw.uniform(1.8, 2.4);
        scenarios.push_back(validate_scenario(single_regime_scenario(r)));
    }

    const double kappa = 3.0;
    int exact_ok = 0, outcome_ok = 0;
    for (size_t i = 0; i < scenarios.size(); ++i) {
        const Scenario& s = scenarios[i];
        const Scenario scaled = validate_scenario(scale_rates(s, kappa));
        const auto mu = stationary_law(s.generator);
        const auto mu_s = stationary_law(scaled.generator);
        const double t1 = threshold_t1(s, mu), t1s = threshold_t1(scaled, mu_s);
        const double t2 = threshold_t2(s, mu), t2s = threshold_t2(scaled, mu_s);
        const bool exact =
            std::abs(t1s - kappa * t1) <= 1e-12 * std::max(1.0, std::abs(kappa * t1)) &&
            std::abs(t2s - kappa * t2) <= 1e-12 * std::max(1.0, std::abs(kappa * t2));
        exact_ok += exact ? 1 : 0;

        EstimationSettings settings;
        settings.horizon = 1000.0;
        settings.dt = 1e-3;
        settings.record_stride = 100;
        settings.seed = 10100 + static_cast<std::uint64_t>(i);
        EstimationSettings scaled_settings = settings;
        scaled_settings.horizon = settings.horizon / kappa;
        scaled_settings.dt = settings.dt / kappa;
        const ThresholdReport a = classify(s, settings);
        const ThresholdReport b = classify(scaled, scaled_settings);
        outcome_ok += (a.outcome == b.outcome) ? 1 : 0;
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "T1/T2 scaled exactly: %d/10; classification unchanged: %d/10", exact_ok,
                  outcome_ok);
    return {exact_ok == 10 && outcome_ok == 10, buf};
}

} // namespace

int main() {
    std::printf("bdpp acceptance suite\n");
    run(1, "CTMC stationary law and occupation fractions", criterion_ctmc);
    run(2, "positivity and pathwise domination", criterion_domination);
    run(3, "deterministic integrator vs independent RK4", criterion_ode_oracle);
    run(4, "extinction regime slopes", criterion_extinction);
    run(5, "prey-only regime: predator extinction and phi law", criterion_prey_only);
    run(6, "coexistence regime: predator lower bound", criterion_coexistence);
    run(7, "finite-time and asymptotic moment bounds", criterion_moments);
    run(8, "single-regime lambda_bar = lambda identity", criterion_n1_identity);
    run(9, "byte-identical reproducibility of artifacts", criterion_reproducibility);
    run(10, "time-unit scale invariance", criterion_scale_invariance);
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
