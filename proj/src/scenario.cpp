#include "pml/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "pml/errors.hpp"
#include "pml/parallel.hpp"

namespace pml {

std::vector<std::string> replicator_param_names() {
  return {"alpha_net", "gamma", "p0", "alpha_mit", "k", "epsilon", "loss"};
}

double get_replicator_param(const ReplicatorParams& p, const std::string& field) {
  if (field == "alpha_net") return p.alpha_net;
  if (field == "gamma") return p.gamma;
  if (field == "p0") return p.p0;
  if (field == "alpha_mit") return p.alpha_mit;
  if (field == "k") return p.k;
  if (field == "epsilon") return p.epsilon;
  if (field == "loss") return p.loss;
  throw ValidationError(field, "unknown parameter name");
}

void set_replicator_param(ReplicatorParams& p, const std::string& field, double value) {
  if (field == "alpha_net") {
    p.alpha_net = value;
  } else if (field == "gamma") {
    p.gamma = value;
  } else if (field == "p0") {
    p.p0 = value;
  } else if (field == "alpha_mit") {
    p.alpha_mit = value;
  } else if (field == "k") {
    p.k = value;
  } else if (field == "epsilon") {
    p.epsilon = value;
  } else if (field == "loss") {
    p.loss = value;
  } else {
    throw ValidationError(field, "unknown parameter name");
  }
  p.validate();
}

void ShockSchedule::validate(const ReplicatorParams& base) const {
  base.validate();
  ReplicatorParams rolling = base;
  double prev_time = -1.0;
  for (const auto& ev : events) {
    if (!std::isfinite(ev.time) || ev.time < 0.0)
      throw ValidationError("time", "event times must be finite and >= 0");
    if (ev.time <= prev_time)
      throw ValidationError("time", "event times must be strictly increasing");
    prev_time = ev.time;
    set_replicator_param(rolling, ev.field, ev.value);
  }
}

namespace {

int side_of(double share, const std::optional<double>& tip) {
  if (!tip) return 0;
  if (share > *tip) return 1;
  if (share < *tip) return -1;
  return 0;
}

}  // namespace

ScenarioResult run_scenario(double s0, const ReplicatorParams& base,
                            const ShockSchedule& schedule, double t_end, double dt) {
  schedule.validate(base);
  if (!std::isfinite(s0) || s0 < 0.0 || s0 > 1.0)
    throw DomainError("s0", "share must be in [0,1]");
  if (!std::isfinite(t_end) || !(t_end > 0.0))
    throw DomainError("t_end", "must be a positive finite time");
  if (!std::isfinite(dt) || !(dt > 0.0))
    throw DomainError("dt", "must be a positive finite step");

  const long long total_steps = std::max(1LL, std::llround(t_end / dt));

  // Snap events to step boundaries; they must stay ordered and inside the
  // horizon afterwards.
  std::vector<std::pair<long long, const ShockEvent*>> snapped;
  long long prev_idx = -1;
  for (const auto& ev : schedule.events) {
    const long long idx = std::llround(ev.time / dt);
    if (idx >= total_steps)
      throw DomainError("t_end", "horizon must extend beyond the last event");
    if (idx <= prev_idx)
      throw DomainError("time", "events collapse onto the same step; shrink dt");
    snapped.emplace_back(idx, &ev);
    prev_idx = idx;
  }

  ScenarioResult res;
  ReplicatorParams cur = base;
  double c = optimal_z(cur).constant_term;
  std::optional<double> tip = tipping_share(cur, kTippingTol);

  res.trajectory.regimes.push_back({0.0, cur});
  res.regime_equilibria.push_back(find_equilibria(cur, kEquilibriumGridN, kEquilibriumTol));

  auto& times = res.trajectory.times;
  auto& shares = res.trajectory.shares;
  times.reserve(static_cast<std::size_t>(total_steps) + 1);
  shares.reserve(static_cast<std::size_t>(total_steps) + 1);

  double s = s0;
  times.push_back(0.0);
  shares.push_back(s);

  int last_side = side_of(s, tip);
  std::size_t next_event = 0;

  const auto note_crossing = [&](double at_time) {
    const int side = side_of(s, tip);
    if (side != 0 && last_side != 0 && side != last_side) {
      res.tipping_events.push_back(
          {at_time, side > 0 ? TipDirection::BelowToAbove : TipDirection::AboveToBelow});
    }
    if (side != 0) last_side = side;
    if (!tip) last_side = 0;  // nothing to cross until a tip reappears
  };

  for (long long i = 0; i < total_steps; ++i) {
    if (next_event < snapped.size() && snapped[next_event].first == i) {
      const ShockEvent& ev = *snapped[next_event].second;
      set_replicator_param(cur, ev.field, ev.value);
      c = optimal_z(cur).constant_term;
      tip = tipping_share(cur, kTippingTol);
      const double t_shock = static_cast<double>(i) * dt;
      res.trajectory.regimes.push_back({t_shock, cur});
      res.regime_equilibria.push_back(
          find_equilibria(cur, kEquilibriumGridN, kEquilibriumTol));
      note_crossing(t_shock);
      ++next_event;
    }
    s = detail::rk4_step(s, dt, cur, c);
    const double t = static_cast<double>(i + 1) * dt;
    times.push_back(t);
    shares.push_back(s);
    note_crossing(t);
  }

  res.long_run_share = s;
  return res;
}

BifurcationDiagram sweep(const ReplicatorParams& base, const std::string& parameter,
                         double lo, double hi, int n) {
  base.validate();
  get_replicator_param(base, parameter);  // name check
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw DomainError("lo", "need finite lo < hi");
  if (n < 2) throw DomainError("n", "must be >= 2");

  BifurcationDiagram diagram;
  diagram.parameter = parameter;
  diagram.samples.resize(static_cast<std::size_t>(n));
  parallel_for_index(n, [&](std::int64_t i) {
    const double v = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    ReplicatorParams q = base;
    try {
      set_replicator_param(q, parameter, v);
    } catch (const ValidationError& e) {
      throw ValidationError(parameter, "sample " + std::to_string(i) + " (value " +
                                           std::to_string(v) + "): " + e.what());
    }
    diagram.samples[static_cast<std::size_t>(i)] = {
        v, find_equilibria(q, kEquilibriumGridN, kEquilibriumTol)};
  });
  return diagram;
}

namespace {

double relax(double s, const ReplicatorParams& p, double relax_t, double dt) {
  const double c = optimal_z(p).constant_term;
  const long long n = std::max(1LL, std::llround(relax_t / dt));
  for (long long i = 0; i < n; ++i) s = detail::rk4_step(s, dt, p, c);
  return s;
}

}  // namespace

std::vector<HysteresisPoint> hysteresis_scan(const ReplicatorParams& base,
                                             const std::string& parameter,
                                             double lo, double hi, int n,
                                             double relax_t, double s0, double dt) {
  base.validate();
  get_replicator_param(base, parameter);
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw DomainError("lo", "need finite lo < hi");
  if (n < 2) throw DomainError("n", "must be >= 2");
  if (!std::isfinite(relax_t) || !(relax_t > 0.0))
    throw DomainError("relax_t", "must be > 0");
  if (!std::isfinite(s0) || s0 < 0.0 || s0 > 1.0)
    throw DomainError("s0", "share must be in [0,1]");
  if (!std::isfinite(dt) || !(dt > 0.0)) throw DomainError("dt", "must be > 0");

  const auto value_at = [&](int i) {
    return lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  };
  const auto apply = [&](int i) {
    ReplicatorParams q = base;
    try {
      set_replicator_param(q, parameter, value_at(i));
    } catch (const ValidationError& e) {
      throw ValidationError(parameter, "sample " + std::to_string(i) + " (value " +
                                           std::to_string(value_at(i)) + "): " + e.what());
    }
    return q;
  };

  std::vector<HysteresisPoint> scan(static_cast<std::size_t>(n));
  double s = s0;
  for (int i = 0; i < n; ++i) {
    s = relax(s, apply(i), relax_t, dt);
    scan[static_cast<std::size_t>(i)].value = value_at(i);
    scan[static_cast<std::size_t>(i)].up_share = s;
  }
  for (int i = n - 1; i >= 0; --i) {
    s = relax(s, apply(i), relax_t, dt);
    scan[static_cast<std::size_t>(i)].down_share = s;
  }
  return scan;
}

const char* to_string(TipDirection d) {
  return d == TipDirection::AboveToBelow ? "AboveToBelow" : "BelowToAbove";
}

}  // namespace pml
