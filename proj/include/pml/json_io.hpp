#pragma once

#include <json.hpp>

#include "pml/calibration.hpp"
#include "pml/model.hpp"
#include "pml/population.hpp"
#include "pml/replicator.hpp"
#include "pml/scenario.hpp"

// JSON views of the result and parameter types. Field names match the CLI
// schema; doubles render with nlohmann's shortest round-trip formatting.

namespace pml {

inline void to_json(nlohmann::json& j, const BaselineParams& p) {
  j = {{"p0", p.p0},       {"alpha_mit", p.alpha_mit}, {"k", p.k},
       {"epsilon", p.epsilon}, {"loss", p.loss},       {"theta", p.theta},
       {"n_s", p.n_s},     {"n_a", p.n_a}};
}

inline void from_json(const nlohmann::json& j, BaselineParams& p) {
  j.at("p0").get_to(p.p0);
  j.at("alpha_mit").get_to(p.alpha_mit);
  j.at("k").get_to(p.k);
  j.at("epsilon").get_to(p.epsilon);
  j.at("loss").get_to(p.loss);
  j.at("theta").get_to(p.theta);
  j.at("n_s").get_to(p.n_s);
  j.at("n_a").get_to(p.n_a);
}

inline void to_json(nlohmann::json& j, const ReplicatorParams& p) {
  j = {{"alpha_net", p.alpha_net}, {"gamma", p.gamma}, {"p0", p.p0},
       {"alpha_mit", p.alpha_mit}, {"k", p.k},         {"epsilon", p.epsilon},
       {"loss", p.loss}};
}

inline void from_json(const nlohmann::json& j, ReplicatorParams& p) {
  j.at("alpha_net").get_to(p.alpha_net);
  j.at("gamma").get_to(p.gamma);
  j.at("p0").get_to(p.p0);
  j.at("alpha_mit").get_to(p.alpha_mit);
  j.at("k").get_to(p.k);
  j.at("epsilon").get_to(p.epsilon);
  j.at("loss").get_to(p.loss);
}

inline void to_json(nlohmann::json& j, const EffortSolution& s) {
  j = {{"e_star", s.e_star},
       {"p_at_e_star", s.p_at_e_star},
       {"eu_s_star", s.eu_s_star},
       {"boundary_hit", to_string(s.boundary_hit)}};
}

inline void to_json(nlohmann::json& j, const ThresholdResult& r) {
  j = nlohmann::json{{"p_star_in_range", r.p_star_in_range},
                     {"decision_at_p0", to_string(r.decision_at_p0)},
                     {"eu_gap", r.eu_gap}};
  if (r.p_star_in_range) {
    j["p_star"] = r.p_star;
  } else {
    j["p_star"] = nullptr;
  }
}

inline void to_json(nlohmann::json& j, const OptimalZ& z) {
  j = {{"z_star", z.z_star},
       {"p_at_z", z.p_at_z},
       {"cost_at_z", z.cost_at_z},
       {"constant_term", z.constant_term}};
}

inline void to_json(nlohmann::json& j, const EquilibriumPoint& p) {
  j = {{"share", p.share}, {"stability", to_string(p.stability)}};
}

inline void to_json(nlohmann::json& j, const EquilibriumSet& s) {
  j = nlohmann::json{{"points", s.points}};
  if (s.tipping_share) {
    j["tipping_share"] = *s.tipping_share;
  } else {
    j["tipping_share"] = nullptr;
  }
}

inline void to_json(nlohmann::json& j, const RegimeSegment& r) {
  j = {{"t_start", r.t_start}, {"params", r.params}};
}

inline void to_json(nlohmann::json& j, const Trajectory& t) {
  j = {{"times", t.times}, {"shares", t.shares}, {"regimes", t.regimes}};
}

inline void to_json(nlohmann::json& j, const TippingEvent& e) {
  j = {{"time", e.time}, {"direction", to_string(e.direction)}};
}

inline void to_json(nlohmann::json& j, const ScenarioResult& r) {
  nlohmann::json regimes = nlohmann::json::array();
  for (std::size_t i = 0; i < r.trajectory.regimes.size(); ++i) {
    regimes.push_back({{"t_start", r.trajectory.regimes[i].t_start},
                       {"params", r.trajectory.regimes[i].params},
                       {"equilibria", r.regime_equilibria[i]}});
  }
  j = {{"long_run_share", r.long_run_share},
       {"tipping_events", r.tipping_events},
       {"regimes", regimes}};
}

inline void to_json(nlohmann::json& j, const BifurcationSample& s) {
  j = {{"value", s.value}, {"equilibria", s.equilibria}};
}

inline void to_json(nlohmann::json& j, const BifurcationDiagram& d) {
  j = {{"parameter", d.parameter}, {"samples", d.samples}};
}

inline void to_json(nlohmann::json& j, const HysteresisPoint& p) {
  j = {{"value", p.value}, {"up_share", p.up_share}, {"down_share", p.down_share}};
}

inline void to_json(nlohmann::json& j, const SimulationRun& r) {
  j = {{"share_path", r.share_path},
       {"sanction_events", r.sanction_events},
       {"final_share", r.final_share},
       {"seed", r.seed}};
}

inline void to_json(nlohmann::json& j, const SeriesPoint& p) {
  j = {{"period", p.period.str()}, {"share", p.share}};
}

inline void to_json(nlohmann::json& j, const ShareSeries& s) {
  j = {{"label", s.label}, {"points", s.points}};
}

inline void to_json(nlohmann::json& j, const CalibrationResult& r) {
  j = {{"fitted", r.fitted},
       {"sse", r.sse},
       {"grid_trace", r.grid_trace},
       {"pass_sse", r.pass_sse},
       {"fitted_path", r.fitted_path}};
}

}  // namespace pml
