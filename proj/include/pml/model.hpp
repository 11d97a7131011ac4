#pragma once

#include <optional>

namespace pml {

// Single-agent model of the choice between an efficient incumbent payment
// system exposed to sanctions and a resilient alternative. An agent staying
// on the incumbent picks a mitigation effort e that lowers the sanction
// probability p(e) = p0 - alpha_mit*e at quadratic cost k*e^2/2.
//
// n_s and n_a are independent inputs; callers wanting complementary shares
// pass n_a = 1 - n_s themselves.
struct BaselineParams {
  double p0 = 0.0;         // baseline sanction probability, in [0,1]
  double alpha_mit = 0.0;  // probability reduction per unit effort, >= 0
  double k = 1.0;          // effort cost curvature, > 0
  double epsilon = 0.0;    // efficiency advantage of the incumbent, > 0
  double loss = 0.0;       // loss when a sanction hits, > 0
  double theta = 0.0;      // network externality strength, >= 0
  double n_s = 0.0;        // share of agents on the incumbent, in [0,1]
  double n_a = 0.0;        // share of agents on the alternative, in [0,1]

  // Throws ValidationError naming the offending field.
  void validate() const;
};

enum class BoundaryHit { None, Lower, Upper };
enum class Decision { Stay, Switch, Indifferent };

struct EffortSolution {
  double e_star = 0.0;
  double p_at_e_star = 0.0;
  double eu_s_star = 0.0;
  BoundaryHit boundary_hit = BoundaryHit::None;
};

struct ThresholdResult {
  double p_star = 0.0;  // NaN when no threshold lies in [0,1]
  bool p_star_in_range = false;
  Decision decision_at_p0 = Decision::Stay;
  double eu_gap = 0.0;  // EU_A - max_e EU_S at the given p0
};

// Utility difference below which stay/switch is reported Indifferent.
inline constexpr double kIndifferenceTol = 1e-12;

// p(e), clamped into [0,1]. Negative or non-finite e is a DomainError.
double sanction_probability(double e, const BaselineParams& p);

// C(e) = k*e^2/2.
double mitigation_cost(double e, const BaselineParams& p);

// EU_S(e) = (1-p(e))(1+eps+theta*n_s) + p(e)(1+theta*n_s-loss) - C(e),
// evaluated with the clamped p(e).
double eu_incumbent(double e, const BaselineParams& p);

// EU_A = 1 + theta*n_a.
double eu_alternative(const BaselineParams& p);

// Upper end of the feasible effort interval: the unclamped p(e) stays
// nonnegative on [0, max_effort]. Zero when alpha_mit == 0.
double max_effort(const BaselineParams& p);

// Maximizes EU_S over [0, max_effort]. The interior candidate is
// alpha_mit*(epsilon+loss)/k; when it leaves the interval the better
// boundary is returned and boundary_hit says which one.
EffortSolution optimal_effort(const BaselineParams& p);

// Fast path for the critical threshold, valid while the optimal effort is
// interior at the threshold itself (always valid for alpha_mit == 0).
// Returns nullopt when that assumption fails; may return values outside
// [0,1] when the indifference point lies beyond the unit interval.
std::optional<double> closed_form_p_star(const BaselineParams& p);

// Bisects EU_A - max_e EU_S in p0 over [0,1] (the maximized utility is
// strictly decreasing in p0, so the root is unique). decision_at_p0 uses
// kIndifferenceTol on the utility gap at the *given* p0.
ThresholdResult critical_threshold(const BaselineParams& p);

// Switch iff EU_A exceeds the optimized EU_S beyond kIndifferenceTol.
Decision switch_decision(const BaselineParams& p);

const char* to_string(BoundaryHit b);
const char* to_string(Decision d);

}  // namespace pml
