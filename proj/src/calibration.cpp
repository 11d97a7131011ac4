#include "pml/calibration.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <set>
#include <sstream>

#include "pml/emit.hpp"
#include "pml/errors.hpp"
#include "pml/scenario.hpp"

namespace pml {

std::string Period::str() const {
  if (quarter == 0) return std::to_string(year);
  return std::to_string(year) + "Q" + std::to_string(quarter);
}

Period Period::parse(const std::string& text) {
  const auto fail = [&text]() -> Period {
    throw ValidationError("period", "expected YYYY or YYYYQn, got '" + text + "'");
  };
  if (text.size() < 4) return fail();
  for (int i = 0; i < 4; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[static_cast<std::size_t>(i)])))
      return fail();
  }
  Period p;
  p.year = std::stoi(text.substr(0, 4));
  if (text.size() == 4) return p;
  if (text.size() == 6 && (text[4] == 'Q' || text[4] == 'q') && text[5] >= '1' &&
      text[5] <= '4') {
    p.quarter = text[5] - '0';
    return p;
  }
  return fail();
}

void ShareSeries::validate() const {
  if (points.size() < 4)
    throw ValidationError("points", "too few points: need at least 4 observations");
  double prev = -std::numeric_limits<double>::infinity();
  for (const auto& pt : points) {
    const double t = pt.period.time();
    if (!(t > prev))
      throw ValidationError("period", "periods must be strictly increasing");
    prev = t;
    if (!std::isfinite(pt.share) || pt.share < 0.0 || pt.share > 1.0)
      throw ValidationError("share", "shares must be in [0,1]");
  }
}

namespace {

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(trim(cur));
  return out;
}

double parse_number(const std::string& s, int line_no) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw ValidationError("share",
                          "line " + std::to_string(line_no) + ": not a number: '" + s + "'");
  return v;
}

}  // namespace

ShareSeries parse_series(std::istream& in, const std::string& default_label) {
  ShareSeries series;
  series.label = default_label;

  std::string line;
  int line_no = 0;
  bool have_header = false;
  bool has_unit_col = false;
  double prev_time = -std::numeric_limits<double>::infinity();

  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const std::string body = trim(t.substr(1));
      if (body.rfind("label:", 0) == 0) series.label = trim(body.substr(6));
      continue;
    }
    if (!have_header) {
      const auto cols = split_csv(t);
      if (cols.size() == 2 && cols[0] == "period" && cols[1] == "share") {
        has_unit_col = false;
      } else if (cols.size() == 3 && cols[0] == "period" && cols[1] == "share" &&
                 cols[2] == "unit") {
        has_unit_col = true;
      } else {
        throw ValidationError("header", "line " + std::to_string(line_no) +
                                            ": expected 'period,share[,unit]'");
      }
      have_header = true;
      continue;
    }

    const auto cols = split_csv(t);
    const std::size_t expected = has_unit_col ? 3 : 2;
    if (cols.size() != expected)
      throw ValidationError("row", "line " + std::to_string(line_no) + ": expected " +
                                       std::to_string(expected) + " columns");
    Period period;
    try {
      period = Period::parse(cols[0]);
    } catch (const ValidationError& e) {
      throw ValidationError("period", "line " + std::to_string(line_no) + ": " + e.what());
    }
    double share = parse_number(cols[1], line_no);
    if (has_unit_col) {
      if (cols[2] == "percent") {
        if (share < 0.0 || share > 100.0)
          throw ValidationError("share", "line " + std::to_string(line_no) +
                                             ": percent shares must be in [0,100]");
        share /= 100.0;
      } else if (cols[2] != "fraction") {
        throw ValidationError("unit", "line " + std::to_string(line_no) +
                                          ": unit must be 'fraction' or 'percent'");
      }
    }
    if (share < 0.0 || share > 1.0)
      throw ValidationError("share", "line " + std::to_string(line_no) +
                                         ": fraction shares must be in [0,1]");
    if (!(period.time() > prev_time))
      throw ValidationError("period", "line " + std::to_string(line_no) +
                                          ": periods must be strictly increasing");
    prev_time = period.time();
    series.points.push_back({period, share});
  }
  if (!have_header) throw ValidationError("header", "missing 'period,share' header");
  series.validate();
  return series;
}

ShareSeries load_series(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("path", "cannot open file: " + path);
  std::string stem = path;
  if (const auto slash = stem.find_last_of("/\\"); slash != std::string::npos)
    stem = stem.substr(slash + 1);
  if (const auto dot = stem.find_last_of('.'); dot != std::string::npos)
    stem = stem.substr(0, dot);
  return parse_series(in, stem);
}

std::string series_to_csv(const ShareSeries& series) {
  std::ostringstream out;
  if (!series.label.empty()) out << "# label: " << series.label << "\n";
  out << "period,share\n";
  for (const auto& pt : series.points)
    out << pt.period.str() << "," << format_double(pt.share) << "\n";
  return out.str();
}

namespace {

const std::vector<std::string>& fittable_params() {
  static const std::vector<std::string> names = {"alpha_net", "gamma", "p0", "epsilon"};
  return names;
}

struct Objective {
  const ShareSeries& series;
  std::vector<long long> obs_steps;  // observation offsets on the dt grid
  long long total_steps = 0;

  explicit Objective(const ShareSeries& s) : series(s) {
    const double t0 = s.points.front().period.time();
    obs_steps.reserve(s.points.size());
    for (const auto& pt : s.points)
      obs_steps.push_back(std::llround((pt.period.time() - t0) / kFitDt));
    total_steps = obs_steps.back();
  }

  // Sum of squared errors of the model path against the observations;
  // non-finite results report failure via NaN.
  double operator()(const ReplicatorParams& p) const {
    const double s0 = series.points.front().share;
    const double c = optimal_z(p).constant_term;
    double s = s0;
    double sse = 0.0;
    std::size_t next = 0;
    for (long long step = 0; step <= total_steps; ++step) {
      if (step > 0) s = detail::rk4_step(s, kFitDt, p, c);
      while (next < obs_steps.size() && obs_steps[next] == step) {
        const double d = s - series.points[next].share;
        sse += d * d;
        ++next;
      }
    }
    if (!std::isfinite(sse)) return std::numeric_limits<double>::quiet_NaN();
    return sse;
  }
};

}  // namespace

CalibrationResult fit_replicator(
    const ShareSeries& series, const std::vector<std::string>& free,
    const std::map<std::string, std::pair<double, double>>& bounds,
    const ReplicatorParams& fixed) {
  series.validate();
  fixed.validate();

  std::set<std::string> seen;
  for (const auto& name : free) {
    const auto& allowed = fittable_params();
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end())
      throw ValidationError(name, "not a fittable parameter");
    if (!seen.insert(name).second)
      throw ValidationError(name, "duplicate free parameter");
    const auto it = bounds.find(name);
    if (it == bounds.end())
      throw ValidationError(name, "unbounded free parameter: bounds required");
    const auto [lo, hi] = it->second;
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
      throw ValidationError(name, "bounds must satisfy lo < hi");
    ReplicatorParams probe = fixed;
    set_replicator_param(probe, name, lo);  // throws if outside validity
    set_replicator_param(probe, name, hi);
  }

  const Objective objective(series);

  ReplicatorParams cur = fixed;
  // Free parameters start from the fixed record, clamped into their bounds.
  for (const auto& name : free) {
    const auto [lo, hi] = bounds.at(name);
    set_replicator_param(cur, name,
                         std::clamp(get_replicator_param(cur, name), lo, hi));
  }

  CalibrationResult result;
  double cur_sse = objective(cur);
  bool any_success = std::isfinite(cur_sse);
  if (!any_success) cur_sse = std::numeric_limits<double>::infinity();

  // Scan order is the canonical parameter order, not the caller's.
  std::vector<std::string> order;
  for (const auto& name : fittable_params())
    if (seen.count(name)) order.push_back(name);

  std::map<std::string, std::pair<double, double>> bracket;
  for (const auto& name : order) bracket[name] = bounds.at(name);

  for (int pass = 0; pass < kFitPasses; ++pass) {
    for (const auto& name : order) {
      const auto [blo, bhi] = bracket[name];
      double best_v = get_replicator_param(cur, name);
      double best_sse = cur_sse;
      for (int j = 0; j < kFitGridPoints; ++j) {
        const double v = blo + (bhi - blo) * static_cast<double>(j) / (kFitGridPoints - 1);
        ReplicatorParams trial = cur;
        set_replicator_param(trial, name, v);
        const double sse = objective(trial);
        ++result.grid_trace;
        if (!std::isfinite(sse)) continue;  // recorded and skipped
        any_success = true;
        if (sse < best_sse) {
          best_sse = sse;
          best_v = v;
        }
      }
      if (best_sse < cur_sse) {
        set_replicator_param(cur, name, best_v);
        cur_sse = best_sse;
      }
    }
    // Halve each bracket around the incumbent value, clipped to the bounds.
    for (const auto& name : order) {
      const auto [lo, hi] = bounds.at(name);
      auto& [blo, bhi] = bracket[name];
      const double quarter = 0.25 * (bhi - blo);
      const double center = get_replicator_param(cur, name);
      blo = std::max(lo, center - quarter);
      bhi = std::min(hi, center + quarter);
    }
    result.pass_sse.push_back(cur_sse);
  }

  if (!any_success)
    throw std::runtime_error("calibration failed: every evaluation was non-finite");

  result.sse = cur_sse;
  for (const auto& name : order)
    result.fitted[name] = get_replicator_param(cur, name);

  // Fitted path at the final parameters, sampled at the observed periods.
  result.fitted_path.label =
      series.label.empty() ? "fitted" : series.label + " (fitted)";
  {
    const double s0 = series.points.front().share;
    const double c = optimal_z(cur).constant_term;
    double s = s0;
    std::size_t next = 0;
    for (long long step = 0; step <= objective.total_steps; ++step) {
      if (step > 0) s = detail::rk4_step(s, kFitDt, cur, c);
      while (next < objective.obs_steps.size() && objective.obs_steps[next] == step) {
        result.fitted_path.points.push_back({series.points[next].period, s});
        ++next;
      }
    }
  }
  return result;
}

}  // namespace pml
