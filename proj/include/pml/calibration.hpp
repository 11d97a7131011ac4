#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pml/replicator.hpp"

namespace pml {

// A calendar year ("2018") or a year-quarter ("2018Q3"). Quarters map onto
// quarter-year fractions on the model's time axis.
struct Period {
  int year = 0;
  int quarter = 0;  // 0 = annual, 1..4 = quarter

  double time() const {
    return static_cast<double>(year) +
           (quarter == 0 ? 0.0 : (quarter - 1) * 0.25);
  }
  std::string str() const;
  static Period parse(const std::string& text);
};

struct SeriesPoint {
  Period period;
  double share = 0.0;  // fraction in [0,1]
};

struct ShareSeries {
  std::string label;
  std::vector<SeriesPoint> points;  // periods strictly increasing

  void validate() const;  // also enforces the 4-point fitting floor
};

struct CalibrationResult {
  std::map<std::string, double> fitted;  // free parameter -> best value
  double sse = 0.0;
  ShareSeries fitted_path;
  std::int64_t grid_trace = 0;        // grid evaluations performed
  std::vector<double> pass_sse;       // best sse after each refinement pass
};

// CSV schema: header `period,share` with an optional third `unit` column
// whose cells are `fraction` (default) or `percent`; `#` starts a comment
// (`# label: ...` names the series); UTF-8, LF or CRLF. Malformed content
// reports the offending line number.
ShareSeries load_series(const std::string& path);
ShareSeries parse_series(std::istream& in, const std::string& default_label);

// Serializes in the same schema (fractions, no unit column).
std::string series_to_csv(const ShareSeries& series);

// Deterministic coordinate grid refinement: kFitPasses passes over a
// kFitGridPoints-point grid per free parameter, halving each bracket around
// the incumbent best value after every pass. The model path integrates the
// replicator from the first observation with one period = 1.0 time units.
// free may name alpha_net, gamma, p0, epsilon; every free parameter needs
// bounds inside its validity range.
inline constexpr int kFitPasses = 3;
inline constexpr int kFitGridPoints = 32;
inline constexpr double kFitDt = 0.01;

CalibrationResult fit_replicator(
    const ShareSeries& series, const std::vector<std::string>& free,
    const std::map<std::string, std::pair<double, double>>& bounds,
    const ReplicatorParams& fixed);

}  // namespace pml
