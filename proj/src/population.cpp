#include "pml/population.hpp"

#include <algorithm>
#include <cmath>

#include "pml/errors.hpp"
#include "pml/parallel.hpp"
#include "pml/rng.hpp"

namespace pml {

namespace {

void check_width(const char* field, double width, double lo_ok, double hi_ok,
                 double base, bool lo_open) {
  if (!std::isfinite(width) || width < 0.0)
    throw ValidationError(field, "heterogeneity width must be >= 0");
  const double lo = base - width;
  const double hi = base + width;
  if (lo_open ? !(lo > lo_ok) : !(lo >= lo_ok))
    throw ValidationError(field, "heterogeneity width leaves the valid range");
  if (hi > hi_ok)
    throw ValidationError(field, "heterogeneity width leaves the valid range");
}

constexpr double kInf = 1e300;

}  // namespace

void HeterogeneityWidths::validate(const BaselineParams& base) const {
  check_width("heterogeneity.p0", p0, 0.0, 1.0, base.p0, false);
  check_width("heterogeneity.alpha_mit", alpha_mit, 0.0, kInf, base.alpha_mit, false);
  check_width("heterogeneity.k", k, 0.0, kInf, base.k, true);
  check_width("heterogeneity.epsilon", epsilon, 0.0, kInf, base.epsilon, true);
  check_width("heterogeneity.loss", loss, 0.0, kInf, base.loss, true);
  check_width("heterogeneity.theta", theta, 0.0, kInf, base.theta, false);
}

void PopulationConfig::validate() const {
  if (n_agents < 2) throw ValidationError("n_agents", "must be >= 2");
  if (!std::isfinite(revision_rate) || !(revision_rate > 0.0) || revision_rate > 1.0)
    throw ValidationError("revision_rate", "must be in (0,1]");
  if (rounds < 0) throw ValidationError("rounds", "must be >= 0");
  if (!std::isfinite(initial_share_alt) || initial_share_alt < 0.0 ||
      initial_share_alt > 1.0)
    throw ValidationError("initial_share_alt", "must be in [0,1]");
  base.validate();
  heterogeneity.validate(base);
}

namespace {

BaselineParams draw_agent_params(const BaselineParams& base,
                                 const HeterogeneityWidths& het, SplitMix64& rng) {
  // One draw per drawable field, width 0 collapsing to the base value, so a
  // given agent stream yields the same traits whichever widths are active.
  BaselineParams p = base;
  const auto jitter = [&rng](double center, double width) {
    return center + width * (2.0 * rng.next_double() - 1.0);
  };
  p.p0 = jitter(base.p0, het.p0);
  p.alpha_mit = jitter(base.alpha_mit, het.alpha_mit);
  p.k = jitter(base.k, het.k);
  p.epsilon = jitter(base.epsilon, het.epsilon);
  p.loss = jitter(base.loss, het.loss);
  p.theta = jitter(base.theta, het.theta);
  return p;
}

}  // namespace

SimulationRun run_population(const PopulationConfig& config) {
  config.validate();
  const std::int64_t n = config.n_agents;
  const double inv_n = 1.0 / static_cast<double>(n);

  std::int64_t alt_count = std::min<std::int64_t>(
      n, static_cast<std::int64_t>(
             std::floor(static_cast<double>(n) * config.initial_share_alt)));

  // Per-agent streams, seeded from the master stream in agent order.
  SplitMix64 master(config.seed);
  std::vector<SplitMix64> streams;
  streams.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) streams.emplace_back(master.next());

  std::vector<AgentState> agents(static_cast<std::size_t>(n));
  const double init_alt = static_cast<double>(alt_count) * inv_n;
  for (std::int64_t i = 0; i < n; ++i) {
    AgentState& a = agents[static_cast<std::size_t>(i)];
    a.params = draw_agent_params(config.base, config.heterogeneity,
                                 streams[static_cast<std::size_t>(i)]);
    a.params.n_s = 1.0 - init_alt;
    a.params.n_a = init_alt;
    if (i < alt_count) {
      a.system = SystemChoice::Alternative;
      a.effort = 0.0;
    } else {
      a.system = SystemChoice::Incumbent;
      // Stage-one best response; e* does not depend on the shares.
      a.effort = optimal_effort(a.params).e_star;
    }
  }

  SimulationRun run;
  run.seed = config.seed;
  run.share_path.reserve(static_cast<std::size_t>(config.rounds) + 1);
  run.sanction_events.reserve(static_cast<std::size_t>(config.rounds) + 1);
  run.share_path.push_back(init_alt);
  run.sanction_events.push_back(0);

  for (std::int64_t round = 1; round <= config.rounds; ++round) {
    // Revision phase: everyone decides against the same round-start snapshot.
    const double snap_alt = static_cast<double>(alt_count) * inv_n;
    const double snap_inc = 1.0 - snap_alt;
    for (std::int64_t i = 0; i < n; ++i) {
      AgentState& a = agents[static_cast<std::size_t>(i)];
      SplitMix64& rng = streams[static_cast<std::size_t>(i)];
      if (rng.next_double() >= config.revision_rate) continue;
      a.params.n_s = snap_inc;
      a.params.n_a = snap_alt;
      const EffortSolution sol = optimal_effort(a.params);
      const double gap = eu_alternative(a.params) - sol.eu_s_star;
      if (gap > kIndifferenceTol) {
        if (a.system == SystemChoice::Incumbent) ++alt_count;
        a.system = SystemChoice::Alternative;
        a.effort = 0.0;
      } else if (gap < -kIndifferenceTol) {
        if (a.system == SystemChoice::Alternative) --alt_count;
        a.system = SystemChoice::Incumbent;
        a.effort = sol.e_star;
      } else if (a.system == SystemChoice::Incumbent) {
        a.effort = sol.e_star;  // indifferent agents do not move
      }
    }

    // Shares after revisions, before sanctions.
    const double cur_alt = static_cast<double>(alt_count) * inv_n;
    const double cur_inc = 1.0 - cur_alt;

    std::int64_t sanctions = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      AgentState& a = agents[static_cast<std::size_t>(i)];
      double payoff;
      if (a.system == SystemChoice::Incumbent) {
        const double pe =
            std::clamp(a.params.p0 - a.params.alpha_mit * a.effort, 0.0, 1.0);
        const bool hit = streams[static_cast<std::size_t>(i)].next_double() < pe;
        if (hit) {
          ++sanctions;
          ++a.sanctioned_count;
          payoff = 1.0 + a.params.theta * cur_inc - a.params.loss;
        } else {
          payoff = 1.0 + a.params.epsilon + a.params.theta * cur_inc;
        }
        payoff -= 0.5 * a.params.k * a.effort * a.effort;
      } else {
        payoff = 1.0 + a.params.theta * cur_alt;
      }
      a.cum_payoff += payoff;
    }

    run.share_path.push_back(cur_alt);
    run.sanction_events.push_back(sanctions);
  }

  run.final_share = run.share_path.back();
  return run;
}

std::vector<std::pair<double, double>> critical_mass_experiment(
    const PopulationConfig& config, const std::vector<double>& share_grid,
    int replicates) {
  config.validate();
  if (replicates < 1) throw DomainError("replicates", "must be >= 1");
  for (double s : share_grid) {
    if (!std::isfinite(s) || s < 0.0 || s > 1.0)
      throw DomainError("share_grid", "shares must be in [0,1]");
  }

  const std::int64_t runs =
      static_cast<std::int64_t>(share_grid.size()) * replicates;
  SplitMix64 seeder(config.seed);
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(runs));
  for (auto& s : seeds) s = seeder.next();

  std::vector<double> finals(static_cast<std::size_t>(runs), 0.0);
  parallel_for_index(runs, [&](std::int64_t flat) {
    PopulationConfig c = config;
    c.initial_share_alt = share_grid[static_cast<std::size_t>(flat / replicates)];
    c.seed = seeds[static_cast<std::size_t>(flat)];
    finals[static_cast<std::size_t>(flat)] = run_population(c).final_share;
  });

  std::vector<std::pair<double, double>> curve;
  curve.reserve(share_grid.size());
  for (std::size_t g = 0; g < share_grid.size(); ++g) {
    double sum = 0.0;
    for (int r = 0; r < replicates; ++r)
      sum += finals[g * static_cast<std::size_t>(replicates) +
                    static_cast<std::size_t>(r)];
    curve.emplace_back(share_grid[g], sum / replicates);
  }
  return curve;
}

BaselineParams baseline_from_replicator(const ReplicatorParams& p, double n_s,
                                        double n_a) {
  BaselineParams b;
  b.p0 = p.p0;
  b.alpha_mit = p.alpha_mit;
  b.k = p.k;
  b.epsilon = p.epsilon;
  b.loss = p.loss;
  b.theta = p.alpha_net;
  b.n_s = n_s;
  b.n_a = n_a;
  b.validate();
  return b;
}

}  // namespace pml
