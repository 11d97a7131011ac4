#include "pml/replicator.hpp"

#include <algorithm>
#include <cmath>

#include "pml/errors.hpp"

namespace pml {

namespace {

void require_finite(const char* field, double v) {
  if (!std::isfinite(v)) throw ValidationError(field, "must be finite");
}

void require_share_arg(const char* field, double s) {
  if (!std::isfinite(s)) throw DomainError(field, "share must be finite");
  if (s < 0.0 || s > 1.0) throw DomainError(field, "share must be in [0,1]");
}

}  // namespace

void ReplicatorParams::validate() const {
  require_finite("alpha_net", alpha_net);
  require_finite("gamma", gamma);
  require_finite("p0", p0);
  require_finite("alpha_mit", alpha_mit);
  require_finite("k", k);
  require_finite("epsilon", epsilon);
  require_finite("loss", loss);
  if (!(alpha_net > 0.0)) throw ValidationError("alpha_net", "must be > 0");
  if (!(gamma > 1.0)) throw ValidationError("gamma", "must be > 1");
  if (p0 < 0.0 || p0 > 1.0) throw ValidationError("p0", "must be in [0,1]");
  if (alpha_mit < 0.0) throw ValidationError("alpha_mit", "must be >= 0");
  if (!(k > 0.0)) throw ValidationError("k", "must be > 0");
  if (!(epsilon > 0.0)) throw ValidationError("epsilon", "must be > 0");
  if (!(loss > 0.0)) throw ValidationError("loss", "must be > 0");
}

double network_benefit(double s, const ReplicatorParams& p) {
  require_share_arg("s", s);
  return p.alpha_net * std::pow(s, p.gamma);
}

OptimalZ optimal_z(const ReplicatorParams& p) {
  OptimalZ r;
  if (p.alpha_mit > 0.0) {
    const double z_cap = p.p0 / p.alpha_mit;
    r.z_star = std::min(p.alpha_mit * p.loss / p.k, z_cap);
  }
  r.p_at_z = std::clamp(p.p0 - p.alpha_mit * r.z_star, 0.0, 1.0);
  r.cost_at_z = 0.5 * p.k * r.z_star * r.z_star;
  r.constant_term = p.epsilon - r.p_at_z * p.loss - r.cost_at_z;
  return r;
}

namespace detail {

double gap_with_constant(double s, const ReplicatorParams& p, double c) {
  return p.alpha_net * (std::pow(s, p.gamma) - std::pow(1.0 - s, p.gamma)) - c;
}

double rk4_step(double s, double dt, const ReplicatorParams& p, double c) {
  const auto f = [&p, c](double x) {
    x = std::clamp(x, 0.0, 1.0);
    return x * (1.0 - x) * gap_with_constant(x, p, c);
  };
  const double k1 = f(s);
  const double k2 = f(s + 0.5 * dt * k1);
  const double k3 = f(s + 0.5 * dt * k2);
  const double k4 = f(s + dt * k3);
  return std::clamp(s + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4), 0.0, 1.0);
}

}  // namespace detail

double utility_gap(double s_b, const ReplicatorParams& p) {
  require_share_arg("s_b", s_b);
  return detail::gap_with_constant(s_b, p, optimal_z(p).constant_term);
}

double replicator_rhs(double s_b, const ReplicatorParams& p) {
  require_share_arg("s_b", s_b);
  return s_b * (1.0 - s_b) * utility_gap(s_b, p);
}

Trajectory integrate(double s0, const ReplicatorParams& p, double t_end, double dt) {
  p.validate();
  require_share_arg("s0", s0);
  if (!std::isfinite(t_end) || !(t_end > 0.0))
    throw DomainError("t_end", "must be a positive finite time");
  if (!std::isfinite(dt) || !(dt > 0.0))
    throw DomainError("dt", "must be a positive finite step");

  const long long n = std::max(1LL, std::llround(t_end / dt));
  const double c = optimal_z(p).constant_term;

  Trajectory tr;
  tr.times.reserve(static_cast<std::size_t>(n) + 1);
  tr.shares.reserve(static_cast<std::size_t>(n) + 1);
  tr.regimes.push_back({0.0, p});

  double s = s0;
  tr.times.push_back(0.0);
  tr.shares.push_back(s);
  for (long long i = 1; i <= n; ++i) {
    s = detail::rk4_step(s, dt, p, c);
    tr.times.push_back(static_cast<double>(i) * dt);
    tr.shares.push_back(s);
  }
  return tr;
}

namespace {

// Bisects the (monotone) gap over a sign-change bracket down to machine
// resolution; tol is revalidated by the caller's invariant tests.
double bisect_gap(const ReplicatorParams& p, double c, double lo, double hi,
                  double g_lo) {
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double gm = detail::gap_with_constant(mid, p, c);
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == (g_lo < 0.0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Stability classify_interior(double rhs_left, double rhs_right) {
  if (rhs_left > 0.0 && rhs_right < 0.0) return Stability::Stable;
  if (rhs_left < 0.0 && rhs_right > 0.0) return Stability::Unstable;
  return Stability::Semistable;
}

}  // namespace

EquilibriumSet find_equilibria(const ReplicatorParams& p, int grid_n, double tol) {
  p.validate();
  if (grid_n < 16) throw DomainError("grid_n", "must be >= 16");
  if (!std::isfinite(tol) || !(tol > 0.0)) throw DomainError("tol", "must be > 0");

  const double c = optimal_z(p).constant_term;
  const auto gap = [&](double s) { return detail::gap_with_constant(s, p, c); };
  const auto rhs = [&](double s) {
    s = std::clamp(s, 0.0, 1.0);
    return s * (1.0 - s) * gap(s);
  };
  const double h = 1.0 / grid_n;

  std::vector<double> interior;
  double prev_s = 0.0;
  double prev_g = gap(0.0);
  for (int i = 1; i <= grid_n; ++i) {
    const double si = static_cast<double>(i) / grid_n;
    const double gi = gap(si);
    if (prev_g == 0.0) {
      if (prev_s > 0.0) interior.push_back(prev_s);  // exact grid zero
    } else if (prev_g * gi < 0.0) {
      interior.push_back(bisect_gap(p, c, prev_s, si, prev_g));
    }
    prev_s = si;
    prev_g = gi;
  }

  EquilibriumSet set;
  {
    const double r = rhs(h);
    Stability st = r < 0.0   ? Stability::Stable
                   : r > 0.0 ? Stability::Unstable
                             : Stability::Semistable;
    set.points.push_back({0.0, st});
  }
  for (double x : interior) {
    // Probes pull toward the nearest boundary midpoint so they never land
    // exactly on a boundary fixed point.
    const double left = rhs(std::max(x - h, 0.5 * x));
    const double right = rhs(std::min(x + h, 0.5 * (x + 1.0)));
    set.points.push_back({x, classify_interior(left, right)});
  }
  {
    const double r = rhs(1.0 - h);
    Stability st = r > 0.0   ? Stability::Stable
                   : r < 0.0 ? Stability::Unstable
                             : Stability::Semistable;
    set.points.push_back({1.0, st});
  }
  if (interior.size() == 1) set.tipping_share = interior.front();
  return set;
}

std::optional<double> tipping_share(const ReplicatorParams& p, double tol) {
  p.validate();
  if (!std::isfinite(tol) || !(tol > 0.0)) throw DomainError("tol", "must be > 0");
  const double c = optimal_z(p).constant_term;
  const double g0 = detail::gap_with_constant(0.0, p, c);
  const double g1 = detail::gap_with_constant(1.0, p, c);
  if (!(g0 < 0.0 && g1 > 0.0)) return std::nullopt;  // gap is increasing in s
  return bisect_gap(p, c, 0.0, 1.0, g0);
}

const char* to_string(Stability s) {
  switch (s) {
    case Stability::Stable:
      return "Stable";
    case Stability::Unstable:
      return "Unstable";
    case Stability::Semistable:
      return "Semistable";
  }
  return "Semistable";
}

}  // namespace pml
