#pragma once

#include <string>
#include <vector>

#include "pml/replicator.hpp"

namespace pml {

// A step change to one ReplicatorParams field at a given time (a sanctions
// package, a technology jump, ...). Shocks are instantaneous; event times
// snap to the nearest integration step boundary.
struct ShockEvent {
  double time = 0.0;
  std::string field;
  double value = 0.0;
};

struct ShockSchedule {
  std::vector<ShockEvent> events;  // times strictly increasing, >= 0

  // Checks ordering, field names, and that every value keeps the
  // cumulatively shocked record valid.
  void validate(const ReplicatorParams& base) const;
};

enum class TipDirection { AboveToBelow, BelowToAbove };

struct TippingEvent {
  double time = 0.0;
  TipDirection direction = TipDirection::BelowToAbove;
};

struct ScenarioResult {
  Trajectory trajectory;
  std::vector<TippingEvent> tipping_events;
  double long_run_share = 0.0;  // share at t_end
  std::vector<EquilibriumSet> regime_equilibria;  // one per regime segment
};

struct BifurcationSample {
  double value = 0.0;
  EquilibriumSet equilibria;
};

struct BifurcationDiagram {
  std::string parameter;
  std::vector<BifurcationSample> samples;  // ordered by value
};

struct HysteresisPoint {
  double value = 0.0;
  double up_share = 0.0;
  double down_share = 0.0;
};

// Equilibrium-search defaults shared by the scenario operations.
inline constexpr int kEquilibriumGridN = 256;
inline constexpr double kEquilibriumTol = 1e-10;
inline constexpr double kTippingTol = 1e-12;

std::vector<std::string> replicator_param_names();
double get_replicator_param(const ReplicatorParams& p, const std::string& field);
// Sets the field and revalidates; unknown names and invalid values throw
// ValidationError naming the field.
void set_replicator_param(ReplicatorParams& p, const std::string& field, double value);

// Integrates piecewise, applying each shock at its (snapped) event time and
// carrying the share across regime changes. A tipping event is recorded
// whenever the share crosses the current regime's tipping share, including
// crossings induced by the tipping share jumping over the share at a shock.
ScenarioResult run_scenario(double s0, const ReplicatorParams& base,
                            const ShockSchedule& schedule, double t_end, double dt);

// find_equilibria at n uniformly spaced parameter values over [lo, hi].
// Samples evaluate in parallel (capped by PML_THREADS) and deterministically.
BifurcationDiagram sweep(const ReplicatorParams& base, const std::string& parameter,
                         double lo, double hi, int n);

// Continuation scan: sweeps the parameter upward from s0, relaxing the share
// for relax_t at each value, then back down from wherever the upward branch
// ended. Branch rows are aligned by parameter value.
std::vector<HysteresisPoint> hysteresis_scan(const ReplicatorParams& base,
                                             const std::string& parameter,
                                             double lo, double hi, int n,
                                             double relax_t, double s0,
                                             double dt = 0.01);

const char* to_string(TipDirection d);

}  // namespace pml
