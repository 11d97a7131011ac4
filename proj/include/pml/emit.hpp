#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pml/calibration.hpp"
#include "pml/model.hpp"
#include "pml/population.hpp"
#include "pml/replicator.hpp"
#include "pml/scenario.hpp"

namespace pml {

// Shortest round-trip decimal representation (std::to_chars), at most 17
// significant digits. Keeps CSV and golden outputs byte-stable.
std::string format_double(double v);

// Tabular CSV renderings, one header line plus data rows, LF endings.
std::string effort_to_csv(const EffortSolution& sol);
std::string threshold_to_csv(const ThresholdResult& res);
std::string equilibria_to_csv(const EquilibriumSet& set);
std::string trajectory_to_csv(const Trajectory& tr);
std::string sweep_to_csv(const BifurcationDiagram& diagram);
std::string hysteresis_to_csv(const std::vector<HysteresisPoint>& scan);
std::string simulation_to_csv(const SimulationRun& run);

// Plot-ready two-or-three-column CSV (x,y[,label]) written to path.
void emit_plot_series(const Trajectory& tr, const std::string& path);
void emit_plot_series(const BifurcationDiagram& diagram, const std::string& path);
void emit_plot_series(const ShareSeries& series, const std::string& path);
void emit_plot_series(const SimulationRun& run, const std::string& path);

// Writes text to path (or to the fallback stream when path is empty).
void write_text(const std::string& text, const std::string& path, std::ostream& fallback);

}  // namespace pml
