#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "bdpp/cli.hpp"
#include "bdpp/errors.hpp"
#include "bdpp/ergodics.hpp"
#include "bdpp/integrator.hpp"
#include "bdpp/model.hpp"
#include "bdpp/report.hpp"
#include "bdpp/scenario_io.hpp"
#include "bdpp/thresholds.hpp"

namespace py = pybind11;
using namespace bdpp;

namespace {

GeneratorMatrix generator_from_rows(const std::vector<std::vector<double>>& rows) {
    return GeneratorMatrix::from_rows(rows);
}

std::vector<std::vector<double>> generator_rows(const GeneratorMatrix& g) {
    std::vector<std::vector<double>> rows(static_cast<size_t>(g.n));
    for (int i = 0; i < g.n; ++i) {
        rows[static_cast<size_t>(i)].resize(static_cast<size_t>(g.n));
        for (int j = 0; j < g.n; ++j) rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = g.at(i, j);
    }
    return rows;
}

} // namespace

PYBIND11_MODULE(_bdpp, m) {
    m.doc() = "Regime-switching Beddington-DeAngelis predator-prey simulator";

    py::register_exception<Error>(m, "BdppError");

    py::class_<RegimeParameterSet>(m, "RegimeParameterSet")
        .def(py::init<>())
        .def_readwrite("a1", &RegimeParameterSet::a1)
        .def_readwrite("b1", &RegimeParameterSet::b1)
        .def_readwrite("c1", &RegimeParameterSet::c1)
        .def_readwrite("a2", &RegimeParameterSet::a2)
        .def_readwrite("b2", &RegimeParameterSet::b2)
        .def_readwrite("c2", &RegimeParameterSet::c2)
        .def_readwrite("m1", &RegimeParameterSet::m1)
        .def_readwrite("m2", &RegimeParameterSet::m2)
        .def_readwrite("m3", &RegimeParameterSet::m3)
        .def_readwrite("alpha", &RegimeParameterSet::alpha)
        .def_readwrite("beta", &RegimeParameterSet::beta);

    py::class_<GeneratorMatrix>(m, "GeneratorMatrix")
        .def(py::init(&generator_from_rows), py::arg("rows"))
        .def_readonly("n", &GeneratorMatrix::n)
        .def("rows", &generator_rows);

    py::class_<StationaryLaw>(m, "StationaryLaw")
        .def_readonly("mu", &StationaryLaw::mu);

    py::class_<SwitchingPath>(m, "SwitchingPath")
        .def_readonly("jump_times", &SwitchingPath::jump_times)
        .def_readonly("states", &SwitchingPath::states)
        .def_readonly("horizon", &SwitchingPath::horizon)
        .def("state_at", &SwitchingPath::state_at, py::arg("t"));

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("regimes", &Scenario::regimes)
        .def_readwrite("generator", &Scenario::generator)
        .def_readwrite("x0", &Scenario::x0)
        .def_readwrite("y0", &Scenario::y0)
        .def_readwrite("initial_regime", &Scenario::initial_regime)
        .def_readwrite("rho", &Scenario::rho)
        .def_property_readonly("num_regimes", &Scenario::num_regimes);

    py::class_<ParameterExtremes>(m, "ParameterExtremes")
        .def_readonly("hat", &ParameterExtremes::hat)
        .def_readonly("check", &ParameterExtremes::check);

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init<>())
        .def(py::init([](double dt, double horizon, std::int64_t stride) {
                 return GridSpec{dt, horizon, stride};
             }),
             py::arg("dt"), py::arg("horizon"), py::arg("record_stride") = 1)
        .def_readwrite("dt", &GridSpec::dt)
        .def_readwrite("horizon", &GridSpec::horizon)
        .def_readwrite("record_stride", &GridSpec::record_stride)
        .def("num_steps", &GridSpec::num_steps);

    py::class_<PathBundle>(m, "PathBundle")
        .def_readonly("times", &PathBundle::times)
        .def_readonly("log_x", &PathBundle::log_x)
        .def_readonly("log_y", &PathBundle::log_y)
        .def_readonly("log_phi", &PathBundle::log_phi)
        .def_readonly("log_psi", &PathBundle::log_psi)
        .def_readonly("regime", &PathBundle::regime)
        .def_readonly("seed", &PathBundle::seed)
        .def_readonly("domination_violations", &PathBundle::domination_violations);

    py::enum_<Auxiliary>(m, "Auxiliary")
        .value("PHI", Auxiliary::kPhi)
        .value("PSI", Auxiliary::kPsi);

    py::class_<AuxPath>(m, "AuxPath")
        .def_readonly("times", &AuxPath::times)
        .def_readonly("log_value", &AuxPath::log_value)
        .def_readonly("regime", &AuxPath::regime)
        .def_readonly("seed", &AuxPath::seed)
        .def_readonly("which", &AuxPath::which);

    py::class_<TimeAverageEstimate>(m, "TimeAverageEstimate")
        .def_readonly("value", &TimeAverageEstimate::value)
        .def_readonly("half_width", &TimeAverageEstimate::half_width)
        .def_readonly("batches", &TimeAverageEstimate::batches)
        .def_readonly("burn_in", &TimeAverageEstimate::burn_in);

    py::class_<EmpiricalDistribution>(m, "EmpiricalDistribution")
        .def_readonly("bin_edges", &EmpiricalDistribution::bin_edges)
        .def_readonly("mass", &EmpiricalDistribution::mass)
        .def_readonly("total_time", &EmpiricalDistribution::total_time)
        .def("regime_marginal", &EmpiricalDistribution::regime_marginal);

    py::class_<SlopeEstimate>(m, "SlopeEstimate")
        .def_readonly("slope", &SlopeEstimate::slope)
        .def_readonly("half_width", &SlopeEstimate::half_width)
        .def_readonly("endpoint_slope", &SlopeEstimate::endpoint_slope)
        .def_readonly("t_start", &SlopeEstimate::t_start)
        .def_readonly("t_end", &SlopeEstimate::t_end);

    py::class_<MomentEstimate>(m, "MomentEstimate")
        .def_readonly("value", &MomentEstimate::value)
        .def_readonly("std_error", &MomentEstimate::std_error);

    py::enum_<Outcome>(m, "Outcome")
        .value("BOTH_EXTINCT", Outcome::kBothExtinct)
        .value("PREY_ONLY_PERSISTENCE", Outcome::kPreyOnlyPersistence)
        .value("COEXISTENCE", Outcome::kCoexistence)
        .value("UNCOVERED", Outcome::kUncovered)
        .value("INCONCLUSIVE", Outcome::kInconclusive);

    py::class_<EstimationSettings>(m, "EstimationSettings")
        .def(py::init<>())
        .def_readwrite("horizon", &EstimationSettings::horizon)
        .def_readwrite("dt", &EstimationSettings::dt)
        .def_readwrite("burn_in_fraction", &EstimationSettings::burn_in_fraction)
        .def_readwrite("batches", &EstimationSettings::batches)
        .def_readwrite("record_stride", &EstimationSettings::record_stride)
        .def_readwrite("seed", &EstimationSettings::seed)
        .def_readwrite("epsilon_band", &EstimationSettings::epsilon_band);

    py::class_<ThresholdReport>(m, "ThresholdReport")
        .def_readonly("t1", &ThresholdReport::t1)
        .def_readonly("t2", &ThresholdReport::t2)
        .def_readonly("lambda_", &ThresholdReport::lambda)
        .def_readonly("lambda_bar", &ThresholdReport::lambda_bar)
        .def_readonly("outcome", &ThresholdReport::outcome)
        .def_readonly("diagnostics", &ThresholdReport::diagnostics);

    m.def("validate_scenario", &validate_scenario, py::arg("scenario"));
    m.def("parameter_extremes", &parameter_extremes, py::arg("scenario"));
    m.def("check_generator", &check_generator, py::arg("generator"));
    m.def("stationary_law", &stationary_law, py::arg("generator"));
    m.def("sample_switching_path", &sample_switching_path, py::arg("generator"),
          py::arg("initial_state"), py::arg("horizon"), py::arg("seed"),
          py::arg("path_id") = 0);
    m.def("occupation_fractions", &occupation_fractions, py::arg("path"));

    m.def("log_drift_x", &log_drift_x, py::arg("log_x"), py::arg("log_y"), py::arg("regime"));
    m.def("log_drift_y", &log_drift_y, py::arg("log_x"), py::arg("log_y"), py::arg("regime"));
    m.def("log_drift_phi", &log_drift_phi, py::arg("log_phi"), py::arg("regime"));
    m.def("log_drift_psi", &log_drift_psi, py::arg("log_psi"), py::arg("regime"));
    m.def("simulate_bundle", &simulate_bundle, py::arg("scenario"), py::arg("grid"),
          py::arg("seed"), py::arg("path_id") = 0,
          py::call_guard<py::gil_scoped_release>());
    m.def("simulate_auxiliary", &simulate_auxiliary, py::arg("scenario"), py::arg("which"),
          py::arg("grid"), py::arg("seed"), py::arg("path_id") = 0,
          py::call_guard<py::gil_scoped_release>());

    m.def(
        "time_average",
        [](const AuxPath& path, const std::function<double(double, int)>& f,
           double burn_in, int batches) { return time_average(view(path), f, burn_in, batches); },
        py::arg("path"), py::arg("f"), py::arg("burn_in"), py::arg("batches") = 20);
    m.def(
        "empirical_stationary",
        [](const AuxPath& path, int bins) { return empirical_stationary(view(path), bins); },
        py::arg("path"), py::arg("bins") = 40);
    m.def(
        "lyapunov_slope",
        [](const std::vector<double>& times, const std::vector<double>& log_values,
           double t_start, double t_end) {
            const std::vector<int> regimes(times.size(), 0);
            return lyapunov_slope(SeriesView{times, log_values, regimes}, t_start, t_end);
        },
        py::arg("times"), py::arg("log_values"), py::arg("t_start"), py::arg("t_end"));
    m.def(
        "ensemble_moment",
        [](const std::vector<double>& log_states, double p) {
            return ensemble_moment(log_states, p);
        },
        py::arg("log_states"), py::arg("p"));

    m.def("threshold_t1", &threshold_t1, py::arg("scenario"), py::arg("mu"));
    m.def("threshold_t2", &threshold_t2, py::arg("scenario"), py::arg("mu"));
    m.def("estimate_lambda", &estimate_lambda, py::arg("scenario"), py::arg("settings"),
          py::call_guard<py::gil_scoped_release>());
    m.def("estimate_lambda_bar", &estimate_lambda_bar, py::arg("scenario"),
          py::arg("lambda_estimate"), py::arg("settings"),
          py::call_guard<py::gil_scoped_release>());
    m.def("moment_bound", &moment_bound, py::arg("scenario"), py::arg("which"), py::arg("p"));
    m.def("finite_time_moment_bound", &finite_time_moment_bound, py::arg("scenario"),
          py::arg("which"), py::arg("p"), py::arg("t"));
    m.def("classify", &classify, py::arg("scenario"), py::arg("settings"),
          py::call_guard<py::gil_scoped_release>());

    m.def("load_scenario", &load_scenario, py::arg("path"));
    m.def("save_scenario", &save_scenario, py::arg("scenario"), py::arg("path"));
    m.def(
        "scenario_from_json_string",
        [](const std::string& text) { return scenario_from_json(nlohmann::json::parse(text)); },
        py::arg("text"));
    m.def(
        "scenario_to_json_string",
        [](const Scenario& s) { return scenario_to_json(s).dump(2); }, py::arg("scenario"));
    m.def(
        "report_to_text", [](const ThresholdReport& r) { return report_to_text(r); },
        py::arg("report"));
}
