#include "bdpp/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <regex>

#include <nlohmann/json.hpp>

#include "bdpp/errors.hpp"
#include "bdpp/integrator.hpp"
#include "bdpp/parallel.hpp"
#include "bdpp/report.hpp"
#include "bdpp/scenario_io.hpp"
#include "bdpp/textio.hpp"

namespace bdpp {

namespace {

int exit_code_for(const Error& e) {
    if (dynamic_cast<const IoError*>(&e) || dynamic_cast<const ParseError*>(&e))
        return kExitIo;
    if (dynamic_cast<const NonPositiveParameter*>(&e) ||
        dynamic_cast<const DimensionMismatch*>(&e) ||
        dynamic_cast<const InvalidInitialCondition*>(&e) ||
        dynamic_cast<const InvalidGenerator*>(&e) ||
        dynamic_cast<const InvalidArgument*>(&e) ||
        dynamic_cast<const TooFewReplicas*>(&e))
        return kExitValidation;
    return kExitNumerical;
}

void check_config(const RunConfig& config) {
    if (!(config.dt > 0.0)) throw InvalidArgument("dt must be positive");
    if (!(config.horizon > 0.0)) throw InvalidArgument("horizon must be positive");
    if (!(config.burn_in_fraction >= 0.0 && config.burn_in_fraction < 1.0))
        throw InvalidArgument("burn-in fraction must lie in [0, 1)");
    if (config.batches < 2) throw InvalidArgument("batches must be >= 2");
    if (config.replicas < 1) throw InvalidArgument("replicas must be >= 1");
}

std::filesystem::path prepare_out_dir(const RunConfig& config) {
    std::filesystem::path dir(config.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + config.out_dir + "'");
    return dir;
}

GridSpec grid_from_config(const RunConfig& config) {
    GridSpec g{config.dt, config.horizon, 1};
    g.record_stride = std::max<std::int64_t>(1, g.num_steps() / 100000);
    return g;
}

nlohmann::ordered_json slope_to_json(const SlopeEstimate& s) {
    nlohmann::ordered_json j;
    j["slope"] = s.slope;
    j["half_width"] = s.half_width;
    j["endpoint_slope"] = s.endpoint_slope;
    j["t_start"] = s.t_start;
    j["t_end"] = s.t_end;
    return j;
}

void write_json_file(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
    write_text_file(path.string(), j.dump(2) + "\n");
}

} // namespace

EstimationSettings settings_from_config(const RunConfig& config) {
    EstimationSettings st;
    st.horizon = config.horizon;
    st.dt = config.dt;
    st.burn_in_fraction = config.burn_in_fraction;
    st.batches = config.batches;
    st.record_stride = grid_from_config(config).record_stride;
    st.seed = config.base_seed;
    return st;
}

Scenario apply_parameter(const Scenario& base, const std::string& param_path, double value) {
    static const std::regex regime_re(R"(^regimes\[(\d+)\]\.([A-Za-z0-9]+)$)");
    static const std::regex generator_re(R"(^generator\[(\d+)\]\[(\d+)\]$)");
    std::smatch m;
    Scenario s = base;
    if (std::regex_match(param_path, m, regime_re)) {
        const int k = std::stoi(m[1]) - 1;
        if (k < 0 || k >= s.num_regimes())
            throw InvalidArgument("regime index out of range in '" + param_path + "'");
        const std::string field = m[2];
        for (const auto& f : kCoefficientFields) {
            if (field == f.name) {
                s.regimes[static_cast<size_t>(k)].*(f.member) = value;
                return s;
            }
        }
        throw InvalidArgument("unknown coefficient '" + field + "' in '" + param_path + "'");
    }
    if (std::regex_match(param_path, m, generator_re)) {
        const int i = std::stoi(m[1]) - 1;
        const int j = std::stoi(m[2]) - 1;
        if (i < 0 || i >= s.generator.n || j < 0 || j >= s.generator.n)
            throw InvalidArgument("generator index out of range in '" + param_path + "'");
        if (i == j)
            throw InvalidArgument("cannot sweep a diagonal generator entry; sweep an "
                                  "off-diagonal rate instead");
        s.generator.at(i, j) = value;
        double off = 0.0;
        for (int l = 0; l < s.generator.n; ++l)
            if (l != i) off += s.generator.at(i, l);
        s.generator.at(i, i) = -off;  // keep the row conservative
        return s;
    }
    throw InvalidArgument("cannot parse parameter path '" + param_path +
                          "'; expected regimes[k].name or generator[i][j]");
}

int cmd_validate(const RunConfig& config) {
    try {
        check_config(config);
        const Scenario s = validate_scenario(load_scenario(config.scenario_path));
        const StationaryLaw mu = stationary_law(s.generator);
        const ParameterExtremes ext = parameter_extremes(s);
        std::cout << "scenario OK: " << s.num_regimes() << " regime(s)\n";
        std::cout << "mu = (";
        for (size_t i = 0; i < mu.mu.size(); ++i)
            std::cout << (i ? ", " : "") << format_g17(mu.mu[i]);
        std::cout << ")\n";
        std::cout << "extremes (min | max over regimes):\n";
        for (const auto& field : kCoefficientFields) {
            std::cout << "  " << field.name << ": " << format_g17(ext.hat.*(field.member))
                      << " | " << format_g17(ext.check.*(field.member)) << "\n";
        }
        return kExitOk;
    } catch (const Error& e) {
        std::cerr << "validate: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int cmd_classify(const RunConfig& config) {
    Scenario s;
    try {
        check_config(config);
        s = validate_scenario(load_scenario(config.scenario_path));
    } catch (const Error& e) {
        std::cerr << "classify: " << e.what() << "\n";
        return exit_code_for(e);
    }
    try {
        const EstimationSettings settings = settings_from_config(config);
        const ThresholdReport report = classify(s, settings);
        const std::vector<std::uint64_t> seeds{config.base_seed};
        const auto dir = prepare_out_dir(config);
        write_json_file(dir / "report.json", report_to_json(report, config, seeds));
        write_text_file((dir / "report.txt").string(), report_to_text(report));
        write_json_file(dir / "run_config.json", config_to_json(config, seeds));
        std::cout << "outcome = " << outcome_name(report.outcome) << "\n";
        return kExitOk;
    } catch (const Error& e) {
        std::cerr << "classify: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int cmd_simulate(const RunConfig& config) {
    Scenario s;
    try {
        check_config(config);
        s = validate_scenario(load_scenario(config.scenario_path));
    } catch (const Error& e) {
        std::cerr << "simulate: " << e.what() << "\n";
        return exit_code_for(e);
    }
    try {
        const GridSpec grid = grid_from_config(config);
        const auto dir = prepare_out_dir(config);
        const double horizon_eff = static_cast<double>(grid.num_steps()) * grid.dt;

        std::vector<PathBundle> bundles(static_cast<size_t>(config.replicas));
        run_indexed(config.replicas, [&](int r) {
            bundles[static_cast<size_t>(r)] =
                simulate_bundle(s, grid, config.base_seed, static_cast<std::uint32_t>(r));
        });

        nlohmann::ordered_json paths = nlohmann::ordered_json::array();
        std::int64_t violations = 0;
        double slope_x_sum = 0.0, slope_y_sum = 0.0;
        for (int r = 0; r < config.replicas; ++r) {
            const PathBundle& b = bundles[static_cast<size_t>(r)];
            char name[32];
            std::snprintf(name, sizeof(name), "path_%03d.csv", r);
            write_bundle_csv(b, (dir / name).string());

            const SlopeEstimate sx =
                lyapunov_slope(view_x(b), 0.5 * horizon_eff, horizon_eff);
            const SlopeEstimate sy =
                lyapunov_slope(view_y(b), 0.5 * horizon_eff, horizon_eff);
            slope_x_sum += sx.slope;
            slope_y_sum += sy.slope;
            violations += b.domination_violations;

            nlohmann::ordered_json pj;
            pj["path_id"] = r;
            pj["seed"] = b.seed;
            pj["csv"] = name;
            pj["slope_log_x"] = slope_to_json(sx);
            pj["slope_log_y"] = slope_to_json(sy);
            pj["domination_violations"] = b.domination_violations;
            nlohmann::ordered_json fin;
            fin["time"] = b.times.back();
            fin["log_x"] = b.log_x.back();
            fin["log_y"] = b.log_y.back();
            fin["log_phi"] = b.log_phi.back();
            fin["log_psi"] = b.log_psi.back();
            pj["final"] = std::move(fin);
            paths.push_back(std::move(pj));
        }

        const std::vector<std::uint64_t> seeds{config.base_seed};
        nlohmann::ordered_json summary;
        summary["config"] = config_to_json(config, seeds);
        summary["paths"] = std::move(paths);
        nlohmann::ordered_json agg;
        agg["domination_violations_total"] = violations;
        agg["mean_slope_log_x"] = slope_x_sum / config.replicas;
        agg["mean_slope_log_y"] = slope_y_sum / config.replicas;
        summary["aggregate"] = std::move(agg);
        write_json_file(dir / "summary.json", summary);

        std::cout << "replicas = " << config.replicas
                  << ", domination violations = " << violations << "\n";
        return kExitOk;
    } catch (const StepTooLarge& e) {
        std::cerr << "simulate: " << e.what()
                  << " (suggested dt <= " << format_g17(e.suggested_dt()) << ")\n";
        return kExitNumerical;
    } catch (const Error& e) {
        std::cerr << "simulate: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int cmd_sweep(const RunConfig& config) {
    Scenario base;
    try {
        check_config(config);
        if (config.sweep_values.empty())
            throw InvalidArgument("sweep needs a nonempty --values grid");
        if (config.sweep_param.empty())
            throw InvalidArgument("sweep needs --param");
        base = validate_scenario(load_scenario(config.scenario_path));
    } catch (const Error& e) {
        std::cerr << "sweep: " << e.what() << "\n";
        return exit_code_for(e);
    }
    try {
        const EstimationSettings settings = settings_from_config(config);
        std::string csv = "value,T1,T2,lambda,lambda_half_width,lambda_bar,"
                          "lambda_bar_half_width,outcome\n";
        for (double value : config.sweep_values) {
            const Scenario s = validate_scenario(apply_parameter(base, config.sweep_param, value));
            const ThresholdReport rep = classify(s, settings);
            csv += format_g17(value) + ',' + format_g17(rep.t1) + ',' + format_g17(rep.t2);
            csv += ',';
            if (rep.lambda)
                csv += format_g17(rep.lambda->value) + ',' + format_g17(rep.lambda->half_width);
            else
                csv += ',';
            csv += ',';
            if (rep.lambda_bar)
                csv += format_g17(rep.lambda_bar->value) + ',' +
                       format_g17(rep.lambda_bar->half_width);
            else
                csv += ',';
            csv += ',';
            csv += outcome_name(rep.outcome);
            csv += '\n';
        }
        const auto dir = prepare_out_dir(config);
        write_text_file((dir / "sweep.csv").string(), csv);
        const std::vector<std::uint64_t> seeds{config.base_seed};
        write_json_file(dir / "run_config.json", config_to_json(config, seeds));
        std::cout << "sweep points = " << config.sweep_values.size() << "\n";
        return kExitOk;
    } catch (const Error& e) {
        std::cerr << "sweep: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int cmd_moments(const RunConfig& config) {
    Scenario s;
    try {
        check_config(config);
        s = validate_scenario(load_scenario(config.scenario_path));
    } catch (const Error& e) {
        std::cerr << "moments: " << e.what() << "\n";
        return exit_code_for(e);
    }
    try {
        const double p = config.moment_p;
        if (!(p > 1.0)) throw InvalidArgument("moment exponent must satisfy p > 1");
        const GridSpec grid = grid_from_config(config);
        const double horizon_eff = static_cast<double>(grid.num_steps()) * grid.dt;
        const std::vector<double> ladder{0.1 * horizon_eff, 0.5 * horizon_eff, horizon_eff};

        std::string csv = "process,p,t,estimate,std_error,finite_t_bound,pass_finite,"
                          "asymptotic_bound,pass_asymptotic\n";
        std::string notes;
        for (Auxiliary which : {Auxiliary::kPhi, Auxiliary::kPsi}) {
            const char* name = which == Auxiliary::kPhi ? "phi" : "psi";
            std::vector<AuxPath> paths(static_cast<size_t>(config.replicas));
            run_indexed(config.replicas, [&](int r) {
                paths[static_cast<size_t>(r)] = simulate_auxiliary(
                    s, which, grid, config.base_seed, static_cast<std::uint32_t>(r));
            });

            bool have_asym = true;
            double asym = 0.0;
            try {
                asym = moment_bound(s, which, p);
            } catch (const ConditionViolated& e) {
                have_asym = false;
                notes += std::string(name) + ": " + e.what() + "\n";
            }

            for (size_t li = 0; li < ladder.size(); ++li) {
                // Nearest recorded time to the ladder target; the bound is
                // evaluated at the time actually used.
                const auto& times = paths[0].times;
                const auto it =
                    std::lower_bound(times.begin(), times.end(), ladder[li] - 1e-12);
                const size_t idx = std::min(static_cast<size_t>(it - times.begin()),
                                            times.size() - 1);
                const double t = times[idx];
                std::vector<double> logs(static_cast<size_t>(config.replicas));
                for (int r = 0; r < config.replicas; ++r)
                    logs[static_cast<size_t>(r)] = paths[static_cast<size_t>(r)].log_value[idx];
                const MomentEstimate est = ensemble_moment(logs, p);
                const double finite_bound = finite_time_moment_bound(s, which, p, t);
                const bool pass_finite = est.value <= finite_bound + 3.0 * est.std_error;
                const bool last = li + 1 == ladder.size();

                csv += std::string(name) + ',' + format_g17(p) + ',' + format_g17(t) + ',' +
                       format_g17(est.value) + ',' + format_g17(est.std_error) + ',' +
                       format_g17(finite_bound) + ',' + (pass_finite ? "true" : "false") + ',';
                if (have_asym) {
                    csv += format_g17(asym);
                    csv += ',';
                    if (last)
                        csv += (est.value <= asym + 3.0 * est.std_error) ? "true" : "false";
                } else {
                    csv += ",condition_violated";
                }
                csv += '\n';
            }
        }
        const auto dir = prepare_out_dir(config);
        write_text_file((dir / "moments.csv").string(), csv);
        if (!notes.empty()) write_text_file((dir / "moments_notes.txt").string(), notes);
        const std::vector<std::uint64_t> seeds{config.base_seed};
        write_json_file(dir / "run_config.json", config_to_json(config, seeds));
        std::cout << "moment ladder written for p = " << format_g17(p) << "\n";
        return kExitOk;
    } catch (const Error& e) {
        std::cerr << "moments: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

} // namespace bdpp
