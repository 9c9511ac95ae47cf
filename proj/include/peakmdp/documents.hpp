#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "peakmdp/grid_world.hpp"
#include "peakmdp/oracle.hpp"
#include "peakmdp/peak.hpp"
#include "peakmdp/policy.hpp"

namespace peakmdp {

/// A peak list together with the grid shape and discount it was solved for,
/// which is everything needed to evaluate values and follow the policy.
///
///     {"gamma": 0.9, "width": 6, "height": 6,
///      "peaks": [{"kind": "baseline", "pri": {"x": 4, "y": 2, "value": 52.63},
///                 "rewards": [0]}]}
///
/// Combined peaks also carry "sec": {"x", "y", "value"}.
struct PeakListDocument {
    std::shared_ptr<const GridWorld> grid;
    double gamma = 0.0;
    PeakList peaks;
};

std::string dump_peak_list(const PeakList& peaks, const GridWorld& grid, double gamma);
PeakListDocument load_peak_list(std::string_view text);

/// Array of {"step", "x", "y", "action", "value"}, one object per line.
std::string dump_trajectory(const Trajectory& trajectory, const GridWorld& grid);

/// {"width", "height", "gamma", "values": [row-major]}.
std::string dump_value_table(const ValueTable& table, const GridWorld& grid);

}  // namespace peakmdp
