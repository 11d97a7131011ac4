#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pml/calibration.hpp"
#include "pml/errors.hpp"
#include "pml/model.hpp"
#include "pml/population.hpp"
#include "pml/replicator.hpp"
#include "pml/scenario.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_pml, m) {
  m.doc() = "Payment-system migration lab: sanction-risk mitigation, "
            "switching thresholds, replicator dynamics, scenarios, "
            "population simulation and calibration.";

  py::register_exception<pml::ValidationError>(m, "ValidationError", PyExc_ValueError);

  // --- single-agent model ---------------------------------------------------
  py::enum_<pml::BoundaryHit>(m, "BoundaryHit")
      .value("NONE", pml::BoundaryHit::None)
      .value("LOWER", pml::BoundaryHit::Lower)
      .value("UPPER", pml::BoundaryHit::Upper);

  py::enum_<pml::Decision>(m, "Decision")
      .value("STAY", pml::Decision::Stay)
      .value("SWITCH", pml::Decision::Switch)
      .value("INDIFFERENT", pml::Decision::Indifferent);

  py::class_<pml::BaselineParams>(m, "BaselineParams")
      .def(py::init([](double p0, double alpha_mit, double k, double epsilon,
                       double loss, double theta, double n_s, double n_a) {
             pml::BaselineParams p{p0, alpha_mit, k, epsilon, loss, theta, n_s, n_a};
             p.validate();
             return p;
           }),
           py::arg("p0"), py::arg("alpha_mit"), py::arg("k"), py::arg("epsilon"),
           py::arg("loss"), py::arg("theta"), py::arg("n_s"), py::arg("n_a"))
      .def_readonly("p0", &pml::BaselineParams::p0)
      .def_readonly("alpha_mit", &pml::BaselineParams::alpha_mit)
      .def_readonly("k", &pml::BaselineParams::k)
      .def_readonly("epsilon", &pml::BaselineParams::epsilon)
      .def_readonly("loss", &pml::BaselineParams::loss)
      .def_readonly("theta", &pml::BaselineParams::theta)
      .def_readonly("n_s", &pml::BaselineParams::n_s)
      .def_readonly("n_a", &pml::BaselineParams::n_a);

  py::class_<pml::EffortSolution>(m, "EffortSolution")
      .def_readonly("e_star", &pml::EffortSolution::e_star)
      .def_readonly("p_at_e_star", &pml::EffortSolution::p_at_e_star)
      .def_readonly("eu_s_star", &pml::EffortSolution::eu_s_star)
      .def_readonly("boundary_hit", &pml::EffortSolution::boundary_hit);

  py::class_<pml::ThresholdResult>(m, "ThresholdResult")
      .def_readonly("p_star", &pml::ThresholdResult::p_star)
      .def_readonly("p_star_in_range", &pml::ThresholdResult::p_star_in_range)
      .def_readonly("decision_at_p0", &pml::ThresholdResult::decision_at_p0)
      .def_readonly("eu_gap", &pml::ThresholdResult::eu_gap);

  m.def("sanction_probability", &pml::sanction_probability, py::arg("e"), py::arg("params"));
  m.def("mitigation_cost", &pml::mitigation_cost, py::arg("e"), py::arg("params"));
  m.def("eu_incumbent", &pml::eu_incumbent, py::arg("e"), py::arg("params"));
  m.def("eu_alternative", &pml::eu_alternative, py::arg("params"));
  m.def("max_effort", &pml::max_effort, py::arg("params"));
  m.def("optimal_effort", &pml::optimal_effort, py::arg("params"));
  m.def("closed_form_p_star", &pml::closed_form_p_star, py::arg("params"));
  m.def("critical_threshold", &pml::critical_threshold, py::arg("params"));
  m.def("switch_decision", &pml::switch_decision, py::arg("params"));

  // --- replicator dynamics --------------------------------------------------
  py::enum_<pml::Stability>(m, "Stability")
      .value("STABLE", pml::Stability::Stable)
      .value("UNSTABLE", pml::Stability::Unstable)
      .value("SEMISTABLE", pml::Stability::Semistable);

  py::class_<pml::ReplicatorParams>(m, "ReplicatorParams")
      .def(py::init([](double alpha_net, double gamma, double p0, double alpha_mit,
                       double k, double epsilon, double loss) {
             pml::ReplicatorParams p{alpha_net, gamma, p0, alpha_mit, k, epsilon, loss};
             p.validate();
             return p;
           }),
           py::arg("alpha_net"), py::arg("gamma"), py::arg("p0"),
           py::arg("alpha_mit"), py::arg("k"), py::arg("epsilon"), py::arg("loss"))
      .def_readonly("alpha_net", &pml::ReplicatorParams::alpha_net)
      .def_readonly("gamma", &pml::ReplicatorParams::gamma)
      .def_readonly("p0", &pml::ReplicatorParams::p0)
      .def_readonly("alpha_mit", &pml::ReplicatorParams::alpha_mit)
      .def_readonly("k", &pml::ReplicatorParams::k)
      .def_readonly("epsilon", &pml::ReplicatorParams::epsilon)
      .def_readonly("loss", &pml::ReplicatorParams::loss);

  py::class_<pml::OptimalZ>(m, "OptimalZ")
      .def_readonly("z_star", &pml::OptimalZ::z_star)
      .def_readonly("p_at_z", &pml::OptimalZ::p_at_z)
      .def_readonly("cost_at_z", &pml::OptimalZ::cost_at_z)
      .def_readonly("constant_term", &pml::OptimalZ::constant_term);

  py::class_<pml::EquilibriumPoint>(m, "EquilibriumPoint")
      .def_readonly("share", &pml::EquilibriumPoint::share)
      .def_readonly("stability", &pml::EquilibriumPoint::stability);

  py::class_<pml::EquilibriumSet>(m, "EquilibriumSet")
      .def_readonly("points", &pml::EquilibriumSet::points)
      .def_readonly("tipping_share", &pml::EquilibriumSet::tipping_share);

  py::class_<pml::RegimeSegment>(m, "RegimeSegment")
      .def_readonly("t_start", &pml::RegimeSegment::t_start)
      .def_readonly("params", &pml::RegimeSegment::params);

  py::class_<pml::Trajectory>(m, "Trajectory")
      .def_readonly("times", &pml::Trajectory::times)
      .def_readonly("shares", &pml::Trajectory::shares)
      .def_readonly("regimes", &pml::Trajectory::regimes);

  m.def("network_benefit", &pml::network_benefit, py::arg("s"), py::arg("params"));
  m.def("optimal_z", &pml::optimal_z, py::arg("params"));
  m.def("utility_gap", &pml::utility_gap, py::arg("s_b"), py::arg("params"));
  m.def("replicator_rhs", &pml::replicator_rhs, py::arg("s_b"), py::arg("params"));
  m.def("integrate", &pml::integrate, py::arg("s0"), py::arg("params"),
        py::arg("t_end"), py::arg("dt"), py::call_guard<py::gil_scoped_release>());
  m.def("find_equilibria", &pml::find_equilibria, py::arg("params"),
        py::arg("grid_n") = pml::kEquilibriumGridN,
        py::arg("tol") = pml::kEquilibriumTol);
  m.def("tipping_share", &pml::tipping_share, py::arg("params"),
        py::arg("tol") = pml::kTippingTol);

  // --- scenarios --------------------------------------------------------------
  py::enum_<pml::TipDirection>(m, "TipDirection")
      .value("ABOVE_TO_BELOW", pml::TipDirection::AboveToBelow)
      .value("BELOW_TO_ABOVE", pml::TipDirection::BelowToAbove);

  py::class_<pml::ShockEvent>(m, "ShockEvent")
      .def(py::init([](double time, const std::string& field, double value) {
             return pml::ShockEvent{time, field, value};
           }),
           py::arg("time"), py::arg("field"), py::arg("value"))
      .def_readonly("time", &pml::ShockEvent::time)
      .def_readonly("field", &pml::ShockEvent::field)
      .def_readonly("value", &pml::ShockEvent::value);

  py::class_<pml::ShockSchedule>(m, "ShockSchedule")
      .def(py::init([](std::vector<pml::ShockEvent> events) {
             pml::ShockSchedule s;
             s.events = std::move(events);
             return s;
           }),
           py::arg("events") = std::vector<pml::ShockEvent>{})
      .def_readonly("events", &pml::ShockSchedule::events);

  py::class_<pml::TippingEvent>(m, "TippingEvent")
      .def_readonly("time", &pml::TippingEvent::time)
      .def_readonly("direction", &pml::TippingEvent::direction);

  py::class_<pml::ScenarioResult>(m, "ScenarioResult")
      .def_readonly("trajectory", &pml::ScenarioResult::trajectory)
      .def_readonly("tipping_events", &pml::ScenarioResult::tipping_events)
      .def_readonly("long_run_share", &pml::ScenarioResult::long_run_share)
      .def_readonly("regime_equilibria", &pml::ScenarioResult::regime_equilibria);

  py::class_<pml::BifurcationSample>(m, "BifurcationSample")
      .def_readonly("value", &pml::BifurcationSample::value)
      .def_readonly("equilibria", &pml::BifurcationSample::equilibria);

  py::class_<pml::BifurcationDiagram>(m, "BifurcationDiagram")
      .def_readonly("parameter", &pml::BifurcationDiagram::parameter)
      .def_readonly("samples", &pml::BifurcationDiagram::samples);

  py::class_<pml::HysteresisPoint>(m, "HysteresisPoint")
      .def_readonly("value", &pml::HysteresisPoint::value)
      .def_readonly("up_share", &pml::HysteresisPoint::up_share)
      .def_readonly("down_share", &pml::HysteresisPoint::down_share);

  m.def("run_scenario", &pml::run_scenario, py::arg("s0"), py::arg("base"),
        py::arg("schedule"), py::arg("t_end"), py::arg("dt"),
        py::call_guard<py::gil_scoped_release>());
  m.def("sweep", &pml::sweep, py::arg("base"), py::arg("parameter"), py::arg("lo"),
        py::arg("hi"), py::arg("n"), py::call_guard<py::gil_scoped_release>());
  m.def("hysteresis_scan", &pml::hysteresis_scan, py::arg("base"),
        py::arg("parameter"), py::arg("lo"), py::arg("hi"), py::arg("n"),
        py::arg("relax_t"), py::arg("s0"), py::arg("dt") = 0.01,
        py::call_guard<py::gil_scoped_release>());

  // --- population simulation --------------------------------------------------
  py::class_<pml::HeterogeneityWidths>(m, "HeterogeneityWidths")
      .def(py::init([](double p0, double alpha_mit, double k, double epsilon,
                       double loss, double theta) {
             return pml::HeterogeneityWidths{p0, alpha_mit, k, epsilon, loss, theta};
           }),
           py::arg("p0") = 0.0, py::arg("alpha_mit") = 0.0, py::arg("k") = 0.0,
           py::arg("epsilon") = 0.0, py::arg("loss") = 0.0, py::arg("theta") = 0.0)
      .def_readonly("p0", &pml::HeterogeneityWidths::p0)
      .def_readonly("alpha_mit", &pml::HeterogeneityWidths::alpha_mit)
      .def_readonly("k", &pml::HeterogeneityWidths::k)
      .def_readonly("epsilon", &pml::HeterogeneityWidths::epsilon)
      .def_readonly("loss", &pml::HeterogeneityWidths::loss)
      .def_readonly("theta", &pml::HeterogeneityWidths::theta);

  py::class_<pml::PopulationConfig>(m, "PopulationConfig")
      .def(py::init([](std::int64_t n_agents, double revision_rate,
                       std::int64_t rounds, std::uint64_t seed,
                       const pml::BaselineParams& base,
                       const pml::HeterogeneityWidths& heterogeneity,
                       double initial_share_alt) {
             pml::PopulationConfig c{n_agents, revision_rate, rounds,
                                     seed,     base,          heterogeneity,
                                     initial_share_alt};
             c.validate();
             return c;
           }),
           py::arg("n_agents"), py::arg("revision_rate"), py::arg("rounds"),
           py::arg("seed"), py::arg("base"),
           py::arg("heterogeneity") = pml::HeterogeneityWidths{},
           py::arg("initial_share_alt") = 0.0)
      .def_readonly("n_agents", &pml::PopulationConfig::n_agents)
      .def_readonly("revision_rate", &pml::PopulationConfig::revision_rate)
      .def_readonly("rounds", &pml::PopulationConfig::rounds)
      .def_readonly("seed", &pml::PopulationConfig::seed)
      .def_readonly("base", &pml::PopulationConfig::base)
      .def_readonly("heterogeneity", &pml::PopulationConfig::heterogeneity)
      .def_readonly("initial_share_alt", &pml::PopulationConfig::initial_share_alt);

  py::class_<pml::SimulationRun>(m, "SimulationRun")
      .def_readonly("share_path", &pml::SimulationRun::share_path)
      .def_readonly("sanction_events", &pml::SimulationRun::sanction_events)
      .def_readonly("final_share", &pml::SimulationRun::final_share)
      .def_readonly("seed", &pml::SimulationRun::seed);

  m.def("run_population", &pml::run_population, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("critical_mass_experiment", &pml::critical_mass_experiment,
        py::arg("config"), py::arg("share_grid"), py::arg("replicates") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("baseline_from_replicator", &pml::baseline_from_replicator,
        py::arg("params"), py::arg("n_s"), py::arg("n_a"));

  // --- calibration --------------------------------------------------------------
  py::class_<pml::Period>(m, "Period")
      .def(py::init([](const std::string& text) { return pml::Period::parse(text); }),
           py::arg("text"))
      .def_readonly("year", &pml::Period::year)
      .def_readonly("quarter", &pml::Period::quarter)
      .def("time", &pml::Period::time)
      .def("__str__", &pml::Period::str);

  py::class_<pml::SeriesPoint>(m, "SeriesPoint")
      .def(py::init([](const std::string& period, double share) {
             return pml::SeriesPoint{pml::Period::parse(period), share};
           }),
           py::arg("period"), py::arg("share"))
      .def_readonly("period", &pml::SeriesPoint::period)
      .def_readonly("share", &pml::SeriesPoint::share);

  py::class_<pml::ShareSeries>(m, "ShareSeries")
      .def(py::init([](const std::string& label, std::vector<pml::SeriesPoint> points) {
             pml::ShareSeries s{label, std::move(points)};
             s.validate();
             return s;
           }),
           py::arg("label"), py::arg("points"))
      .def_readonly("label", &pml::ShareSeries::label)
      .def_readonly("points", &pml::ShareSeries::points);

  py::class_<pml::CalibrationResult>(m, "CalibrationResult")
      .def_readonly("fitted", &pml::CalibrationResult::fitted)
      .def_readonly("sse", &pml::CalibrationResult::sse)
      .def_readonly("fitted_path", &pml::CalibrationResult::fitted_path)
      .def_readonly("grid_trace", &pml::CalibrationResult::grid_trace)
      .def_readonly("pass_sse", &pml::CalibrationResult::pass_sse);

  m.def("load_series", &pml::load_series, py::arg("path"));
  m.def("fit_replicator", &pml::fit_replicator, py::arg("series"), py::arg("free"),
        py::arg("bounds"), py::arg("fixed"),
        py::call_guard<py::gil_scoped_release>());
}
