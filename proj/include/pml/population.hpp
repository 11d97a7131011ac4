#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pml/model.hpp"
#include "pml/replicator.hpp"

namespace pml {

// Optional uniform half-widths for per-agent parameter draws around the base
// record. Only the behavioural fields are drawn; n_s/n_a are population
// state, never agent traits.
struct HeterogeneityWidths {
  double p0 = 0.0;
  double alpha_mit = 0.0;
  double k = 0.0;
  double epsilon = 0.0;
  double loss = 0.0;
  double theta = 0.0;

  // Widths must keep every drawable value valid for the given base.
  void validate(const BaselineParams& base) const;
};

struct PopulationConfig {
  std::int64_t n_agents = 2;     // >= 2
  double revision_rate = 0.05;   // per-round revision probability, in (0,1]
  std::int64_t rounds = 0;
  std::uint64_t seed = 1;
  BaselineParams base;           // n_s/n_a ignored in-simulation (endogenous)
  HeterogeneityWidths heterogeneity;
  double initial_share_alt = 0.0;

  void validate() const;
};

enum class SystemChoice { Incumbent, Alternative };

struct AgentState {
  BaselineParams params;
  SystemChoice system = SystemChoice::Incumbent;
  double effort = 0.0;  // always 0 on the alternative system
  double cum_payoff = 0.0;
  std::int64_t sanctioned_count = 0;
};

struct SimulationRun {
  std::vector<double> share_path;          // rounds+1 entries, initial first
  std::vector<std::int64_t> sanction_events;  // aligned with share_path; [0]=0
  double final_share = 0.0;
  std::uint64_t seed = 0;
};

// Repeated play of the invest-or-switch stage game. Each round a mu-fraction
// of agents revises: a revising agent best-responds to the round-start
// population shares (optimal_effort + the stay/switch comparison) and moves
// accordingly. Shares are recomputed after revisions; then every incumbent
// draws a sanction with probability p(effort) and round payoffs accrue from
// the realized branch. Identical configs reproduce bit-identically; agent
// randomness comes from per-agent SplitMix64 streams seeded by the outputs
// of a master stream, so intra-round processing order does not matter.
SimulationRun run_population(const PopulationConfig& config);

// Runs run_population once per (initial share, replicate) with fresh seeds
// derived from the base seed by flat index; returns the adoption curve of
// (initial share, mean final share). Runs evaluate in parallel.
std::vector<std::pair<double, double>> critical_mass_experiment(
    const PopulationConfig& config, const std::vector<double>& share_grid,
    int replicates = 1);

// The decision-model parameters an agent in the endogenous-network model
// would face, with the network scale reused as the linear externality
// strength. Used to compare simulations against replicator trajectories.
BaselineParams baseline_from_replicator(const ReplicatorParams& p, double n_s,
                                        double n_a);

}  // namespace pml
