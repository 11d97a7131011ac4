#include "pml/emit.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pml {

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::string effort_to_csv(const EffortSolution& sol) {
  std::ostringstream out;
  out << "e_star,p_at_e_star,eu_s_star,boundary_hit\n"
      << format_double(sol.e_star) << "," << format_double(sol.p_at_e_star) << ","
      << format_double(sol.eu_s_star) << "," << to_string(sol.boundary_hit) << "\n";
  return out.str();
}

std::string threshold_to_csv(const ThresholdResult& res) {
  std::ostringstream out;
  out << "p_star,p_star_in_range,decision_at_p0,eu_gap\n"
      << format_double(res.p_star) << "," << (res.p_star_in_range ? "true" : "false")
      << "," << to_string(res.decision_at_p0) << "," << format_double(res.eu_gap)
      << "\n";
  return out.str();
}

std::string equilibria_to_csv(const EquilibriumSet& set) {
  std::ostringstream out;
  out << "share,stability\n";
  for (const auto& pt : set.points)
    out << format_double(pt.share) << "," << to_string(pt.stability) << "\n";
  return out.str();
}

std::string trajectory_to_csv(const Trajectory& tr) {
  std::ostringstream out;
  out << "time,share\n";
  for (std::size_t i = 0; i < tr.times.size(); ++i)
    out << format_double(tr.times[i]) << "," << format_double(tr.shares[i]) << "\n";
  return out.str();
}

std::string sweep_to_csv(const BifurcationDiagram& diagram) {
  std::ostringstream out;
  out << "value,share,stability\n";
  for (const auto& sample : diagram.samples)
    for (const auto& pt : sample.equilibria.points)
      out << format_double(sample.value) << "," << format_double(pt.share) << ","
          << to_string(pt.stability) << "\n";
  return out.str();
}

std::string hysteresis_to_csv(const std::vector<HysteresisPoint>& scan) {
  std::ostringstream out;
  out << "value,up_share,down_share\n";
  for (const auto& pt : scan)
    out << format_double(pt.value) << "," << format_double(pt.up_share) << ","
        << format_double(pt.down_share) << "\n";
  return out.str();
}

std::string simulation_to_csv(const SimulationRun& run) {
  std::ostringstream out;
  out << "round,share,sanctions\n";
  for (std::size_t r = 0; r < run.share_path.size(); ++r)
    out << r << "," << format_double(run.share_path[r]) << ","
        << run.sanction_events[r] << "\n";
  return out.str();
}

namespace {

void write_file(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write to " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace

void emit_plot_series(const Trajectory& tr, const std::string& path) {
  std::ostringstream out;
  out << "x,y\n";
  for (std::size_t i = 0; i < tr.times.size(); ++i)
    out << format_double(tr.times[i]) << "," << format_double(tr.shares[i]) << "\n";
  write_file(out.str(), path);
}

void emit_plot_series(const BifurcationDiagram& diagram, const std::string& path) {
  std::ostringstream out;
  out << "x,y,label\n";
  for (const auto& sample : diagram.samples)
    for (const auto& pt : sample.equilibria.points)
      out << format_double(sample.value) << "," << format_double(pt.share) << ","
          << to_string(pt.stability) << "\n";
  write_file(out.str(), path);
}

void emit_plot_series(const ShareSeries& series, const std::string& path) {
  std::ostringstream out;
  out << "x,y\n";
  for (const auto& pt : series.points)
    out << format_double(pt.period.time()) << "," << format_double(pt.share) << "\n";
  write_file(out.str(), path);
}

void emit_plot_series(const SimulationRun& run, const std::string& path) {
  std::ostringstream out;
  out << "x,y\n";
  for (std::size_t r = 0; r < run.share_path.size(); ++r)
    out << r << "," << format_double(run.share_path[r]) << "\n";
  write_file(out.str(), path);
}

void write_text(const std::string& text, const std::string& path, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  write_file(text, path);
}

}  // namespace pml
