#pragma once

#include <string>
#include <vector>

#include "scs/panel.hpp"
#include "scs/sim.hpp"

namespace scs {

/// Shortest round-trip decimal representation of v.
[[nodiscard]] std::string format_full(double v);

/// Load a wide panel CSV: header `time` first, one column per unit, numeric
/// cells, strictly increasing time labels. The returned panel keeps every
/// file column; treated/donor roles are set from the arguments.
/// Throws Error(Data) for malformed content (row and column named) and
/// Error(Config) when a requested unit is not a file column.
[[nodiscard]] PanelData load_panel_csv(const std::string& path, const std::string& treated_unit,
                                       const std::vector<std::string>& donor_units);

/// Write the panel in the same wide format with full-precision cells.
void write_panel_csv(const std::string& path, const PanelData& panel);

/// Write a generated dataset: the panel CSV at path plus the latent series
/// (u, w, i, z columns) in a `<path minus .csv>.latents.csv` sidecar.
void write_sim_csvs(const std::string& path, const SimDataset& dataset);

} // namespace scs
