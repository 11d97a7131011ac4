#pragma once

#include <optional>
#include <vector>

namespace pml {

// Population model with an endogenous network benefit theta(s) = alpha_net *
// s^gamma (gamma > 1, increasing returns to adoption). Agents on system A
// keep the efficiency edge epsilon but carry sanction risk mitigated by an
// effort z; agents on system B enjoy only their network term. The adoption
// share s_b follows the replicator equation
//   ds_b/dt = s_b (1 - s_b) [U_B - U_A].
struct ReplicatorParams {
  double alpha_net = 0.1;  // network benefit scale, > 0
  double gamma = 2.0;      // adoption-returns exponent, > 1 strictly
  double p0 = 0.0;         // baseline sanction probability, in [0,1]
  double alpha_mit = 0.0;  // effort effectiveness, >= 0
  double k = 1.0;          // effort cost curvature, > 0
  double epsilon = 0.0;    // efficiency gap, > 0
  double loss = 0.0;       // sanction loss, > 0

  void validate() const;
};

struct OptimalZ {
  double z_star = 0.0;
  double p_at_z = 0.0;
  double cost_at_z = 0.0;
  // c = epsilon - p(z*)*loss - C(z*); U_B - U_A = theta(s) - theta(1-s) - c.
  double constant_term = 0.0;
};

enum class Stability { Stable, Unstable, Semistable };

struct EquilibriumPoint {
  double share = 0.0;
  Stability stability = Stability::Semistable;
};

struct EquilibriumSet {
  std::vector<EquilibriumPoint> points;  // ascending; 0 and 1 always present
  std::optional<double> tipping_share;   // set when exactly one interior point
};

struct RegimeSegment {
  double t_start = 0.0;
  ReplicatorParams params;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<double> shares;
  std::vector<RegimeSegment> regimes;  // parameter regime per segment
};

// theta(s) = alpha_net * s^gamma. s outside [0,1] is a DomainError.
double network_benefit(double s, const ReplicatorParams& p);

// Maximizes -p(z)*loss - C(z) over the feasible z (the network and epsilon
// terms do not depend on z). Interior candidate alpha_mit*loss/k, clamped to
// [0, p0/alpha_mit]. Marginal benefit here is alpha*loss, not
// alpha*(epsilon+loss): epsilon enters the utility additively.
OptimalZ optimal_z(const ReplicatorParams& p);

// U_B - U_A = theta(s_b) - theta(1-s_b) - c. Strictly increasing in s_b.
double utility_gap(double s_b, const ReplicatorParams& p);

// s_b (1 - s_b) * utility_gap(s_b); exactly zero at both boundaries.
double replicator_rhs(double s_b, const ReplicatorParams& p);

// Classical fixed-step RK4 from s0 over [0, t_end], recording every step.
// Stage arguments and each step result are clamped into [0,1]; the horizon
// snaps to a whole number of steps.
Trajectory integrate(double s0, const ReplicatorParams& p, double t_end, double dt);

// Scans the gap on a uniform grid of grid_n+1 points and bisects every
// sign-change bracket to |gap| <= tol. 0 and 1 are always reported.
// Stability is classified by probing the rhs one grid step to either side
// (boundaries use their single interior side).
EquilibriumSet find_equilibria(const ReplicatorParams& p, int grid_n, double tol);

// Root of the indifference equation theta(s) - theta(1-s) = c, unique when
// bracketed by a sign change on [0,1]; absent otherwise.
std::optional<double> tipping_share(const ReplicatorParams& p, double tol);

const char* to_string(Stability s);

namespace detail {

// Gap with the z-optimization constant hoisted out of inner loops; the
// arithmetic is identical to utility_gap for c = optimal_z(p).constant_term.
double gap_with_constant(double s, const ReplicatorParams& p, double c);

// One RK4 step with clamped stage arguments and clamped result.
double rk4_step(double s, double dt, const ReplicatorParams& p, double c);

}  // namespace detail

}  // namespace pml
