#include "pml/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pml/errors.hpp"

namespace pml {

namespace {

void require_finite(const char* field, double v) {
  if (!std::isfinite(v)) throw ValidationError(field, "must be finite");
}

void require_effort_arg(double e) {
  if (!std::isfinite(e)) throw DomainError("e", "effort must be finite");
  if (e < 0.0) throw DomainError("e", "effort must be >= 0");
}

}  // namespace

void BaselineParams::validate() const {
  require_finite("p0", p0);
  require_finite("alpha_mit", alpha_mit);
  require_finite("k", k);
  require_finite("epsilon", epsilon);
  require_finite("loss", loss);
  require_finite("theta", theta);
  require_finite("n_s", n_s);
  require_finite("n_a", n_a);
  if (p0 < 0.0 || p0 > 1.0) throw ValidationError("p0", "must be in [0,1]");
  if (alpha_mit < 0.0) throw ValidationError("alpha_mit", "must be >= 0");
  if (!(k > 0.0)) throw ValidationError("k", "must be > 0");
  if (!(epsilon > 0.0)) throw ValidationError("epsilon", "must be > 0");
  if (!(loss > 0.0)) throw ValidationError("loss", "must be > 0");
  if (theta < 0.0) throw ValidationError("theta", "must be >= 0");
  if (n_s < 0.0 || n_s > 1.0) throw ValidationError("n_s", "must be in [0,1]");
  if (n_a < 0.0 || n_a > 1.0) throw ValidationError("n_a", "must be in [0,1]");
}

double sanction_probability(double e, const BaselineParams& p) {
  require_effort_arg(e);
  return std::clamp(p.p0 - p.alpha_mit * e, 0.0, 1.0);
}

double mitigation_cost(double e, const BaselineParams& p) {
  require_effort_arg(e);
  return 0.5 * p.k * e * e;
}

double eu_incumbent(double e, const BaselineParams& p) {
  const double pe = sanction_probability(e, p);
  return (1.0 - pe) * (1.0 + p.epsilon + p.theta * p.n_s) +
         pe * (1.0 + p.theta * p.n_s - p.loss) - mitigation_cost(e, p);
}

double eu_alternative(const BaselineParams& p) {
  return 1.0 + p.theta * p.n_a;
}

double max_effort(const BaselineParams& p) {
  return p.alpha_mit > 0.0 ? p.p0 / p.alpha_mit : 0.0;
}

EffortSolution optimal_effort(const BaselineParams& p) {
  EffortSolution sol;
  if (p.alpha_mit == 0.0) {
    // Effort cannot move the probability; any e > 0 is pure cost.
    sol.e_star = 0.0;
    sol.boundary_hit = BoundaryHit::Lower;
  } else {
    const double e_cap = max_effort(p);
    const double interior = p.alpha_mit * (p.epsilon + p.loss) / p.k;
    if (interior > e_cap) {
      // EU_S is concave with positive slope at 0, so the cap wins; the
      // comparison keeps the contract honest if that ever changes.
      sol.e_star = eu_incumbent(e_cap, p) >= eu_incumbent(0.0, p) ? e_cap : 0.0;
      sol.boundary_hit =
          sol.e_star == e_cap ? BoundaryHit::Upper : BoundaryHit::Lower;
    } else {
      sol.e_star = interior;
      sol.boundary_hit = BoundaryHit::None;
    }
  }
  sol.p_at_e_star = sanction_probability(sol.e_star, p);
  sol.eu_s_star = eu_incumbent(sol.e_star, p);
  return sol;
}

std::optional<double> closed_form_p_star(const BaselineParams& p) {
  const double stake = p.epsilon + p.loss;
  const double effort_bonus =
      p.alpha_mit * p.alpha_mit * stake * stake / (2.0 * p.k);
  const double cand =
      (p.epsilon + p.theta * (p.n_s - p.n_a) + effort_bonus) / stake;
  if (p.alpha_mit > 0.0) {
    // Interior-effort assumption: e* = alpha*stake/k must fit under the
    // feasibility cap cand/alpha evaluated at the threshold itself.
    const double interior = p.alpha_mit * stake / p.k;
    if (interior > cand / p.alpha_mit) return std::nullopt;
  }
  return cand;
}

namespace {

Decision classify(double eu_gap) {
  if (eu_gap > kIndifferenceTol) return Decision::Switch;
  if (eu_gap < -kIndifferenceTol) return Decision::Stay;
  return Decision::Indifferent;
}

}  // namespace

ThresholdResult critical_threshold(const BaselineParams& p) {
  const auto gap_at = [&p](double p0) {
    BaselineParams q = p;
    q.p0 = p0;
    return eu_alternative(q) - optimal_effort(q).eu_s_star;
  };

  ThresholdResult res;
  res.eu_gap = gap_at(p.p0);
  res.decision_at_p0 = classify(res.eu_gap);

  const double g0 = gap_at(0.0);
  const double g1 = gap_at(1.0);
  if (g0 > 0.0 || g1 < 0.0) {
    // The indifference point lies outside [0,1].
    res.p_star = std::numeric_limits<double>::quiet_NaN();
    res.p_star_in_range = false;
    return res;
  }
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 100 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (gap_at(mid) < 0.0 ? lo : hi) = mid;
  }
  res.p_star = 0.5 * (lo + hi);
  res.p_star_in_range = true;
  return res;
}

Decision switch_decision(const BaselineParams& p) {
  return classify(eu_alternative(p) - optimal_effort(p).eu_s_star);
}

const char* to_string(BoundaryHit b) {
  switch (b) {
    case BoundaryHit::None:
      return "none";
    case BoundaryHit::Lower:
      return "lower";
    case BoundaryHit::Upper:
      return "upper";
  }
  return "none";
}

const char* to_string(Decision d) {
  switch (d) {
    case Decision::Stay:
      return "Stay";
    case Decision::Switch:
      return "Switch";
    case Decision::Indifferent:
      return "Indifferent";
  }
  return "Stay";
}

}  // namespace pml
