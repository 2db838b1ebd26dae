// Copyright 2026 The Stackelroute Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Region diagram of the homogeneous two-route game.
//
// x axis: c_o * delta_1^2, swept by varying c_o with delta_1, lambda and r
//         held at the base config's values.
// y axis: territory gap E1 - E2, swept by lowering E2 from the base E1.
//
// Each axis is split into `resolution` equal cells; classification happens
// at cell centers.

#ifndef STACKELROUTE_SWEEP_HPP_
#define STACKELROUTE_SWEEP_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stackelroute/analytic.hpp"
#include "stackelroute/config_json.hpp"
#include "stackelroute/error.hpp"
#include "stackelroute/format.hpp"
#include "stackelroute/game.hpp"
#include "stackelroute/parallel.hpp"

namespace stackelroute {

struct AxisRange {
  double min = 0.0;
  double max = 0.0;
  int resolution = 2;

  double CellWidth() const { return (max - min) / resolution; }
  double Center(int i) const { return min + (i + 0.5) * CellWidth(); }
};

struct SweepSpec {
  GameConfig base;
  AxisRange x;
  AxisRange y;
};

struct RegionCell {
  double x_value = 0.0;  // c_o * delta_1^2
  double y_value = 0.0;  // E1 - E2
  int case_id = 0;
  std::vector<InteractionKind> kinds;  // sorted, unique
  std::vector<int> routes;             // leader routes, 1-based, sorted

  bool SameRegion(const RegionCell& o) const {
    return case_id == o.case_id && kinds == o.kinds && routes == o.routes;
  }
  bool SameOutcome(const RegionCell& o) const {
    return kinds == o.kinds && routes == o.routes;
  }
};

struct Boundary {
  std::string label;
  std::string source;  // "empirical" or "analytic"
  std::vector<std::array<double, 2>> points;
};

struct RegionGrid {
  int cols = 0;  // x resolution
  int rows = 0;  // y resolution
  std::vector<RegionCell> cells;  // row-major, row = y index
  std::vector<Boundary> boundaries;

  const RegionCell& at(int row, int col) const {
    return cells[static_cast<std::size_t>(row) * cols + col];
  }
};

inline constexpr const char* kHalfLineLabel = "c_o*delta1^2 = r/(2*lambda)";
inline constexpr const char* kFullLineLabel = "c_o*delta1^2 = r/lambda";

inline const char* FrontierLabel(int case_id) {
  switch (case_id) {
    case 1:
    case 2:
      return "E1-E2 = r/(2*lambda*delta1)";
    case 3:
    case 5:
      return "E1-E2 = (lambda-1)*c_o*delta1 - (lambda-2)*r/(2*lambda*delta1)";
    default:
      return "E1-E2 = r/(2*delta1)";
  }
}

inline void ValidateSweepSpec(const SweepSpec& spec) {
  if (spec.base.num_routes() != 2 || !spec.base.homogeneous()) {
    throw Error(ErrorCode::kInvalidRange,
                "sweep needs a homogeneous base config with 2 routes");
  }
  for (const AxisRange* axis : {&spec.x, &spec.y}) {
    if (!std::isfinite(axis->min) || !std::isfinite(axis->max) ||
        !(axis->max > axis->min) || axis->resolution < 2) {
      throw Error(ErrorCode::kInvalidRange,
                  "axis range must be finite with max > min and "
                  "resolution >= 2");
    }
  }
  if (spec.x.min < 0.0) {
    throw Error(ErrorCode::kInvalidRange, "x range must be non-negative");
  }
  if (spec.y.min < 0.0 || spec.y.max > spec.base.territories().better) {
    throw Error(ErrorCode::kInvalidRange,
                "y range must lie in [0, E1] so that E2 stays positive");
  }
}

// Base config with c_o = x / delta_1^2 and E2 = E1 - y.
inline GameConfig ConfigAt(const SweepSpec& spec, double x, double y) {
  RawConfig raw = spec.base.ToRaw();
  const double delta1 = raw.delta[0];
  const double c_o = x / (delta1 * delta1);
  raw.c_o = {c_o, c_o};
  raw.territory[1] = raw.territory[0] - y;
  return GameConfig::Validate(raw);
}

inline RegionCell ClassifyCell(const SweepSpec& spec, double x, double y) {
  const GameConfig config = ConfigAt(spec, x, y);
  RegionCell cell;
  cell.x_value = x;
  cell.y_value = y;
  cell.case_id = ClassifyCase(config).case_id;
  for (const Equilibrium& eq : SolveTwoRoute(config)) {
    cell.kinds.push_back(eq.kind);
    cell.routes.push_back(eq.profile.x1.one_based());
  }
  std::sort(cell.kinds.begin(), cell.kinds.end());
  cell.kinds.erase(std::unique(cell.kinds.begin(), cell.kinds.end()),
                   cell.kinds.end());
  std::sort(cell.routes.begin(), cell.routes.end());
  cell.routes.erase(std::unique(cell.routes.begin(), cell.routes.end()),
                    cell.routes.end());
  return cell;
}

namespace internal {

inline double HalfLine(const SweepSpec& spec) {
  return spec.base.r() / (2.0 * spec.base.lambda());
}

inline double FullLine(const SweepSpec& spec) {
  return spec.base.r() / spec.base.lambda();
}

inline double AnalyticFrontier(const SweepSpec& spec, int case_id, double x) {
  return GapThreshold(case_id, x, spec.base.routes().deltas()[0],
                      spec.base.lambda(), spec.base.r());
}

// Rows j where the classification changes between row j-1 and row j.
inline std::vector<int> ColumnTransitions(const RegionGrid& grid, int col) {
  std::vector<int> out;
  for (int j = 1; j < grid.rows; ++j) {
    if (!grid.at(j - 1, col).SameOutcome(grid.at(j, col))) out.push_back(j);
  }
  return out;
}

}  // namespace internal

// Empirical classification-change curves plus the closed-form curves, each
// clipped to the span of cell centers.
inline std::vector<Boundary> ExtractBoundaries(const RegionGrid& grid,
                                               const SweepSpec& spec) {
  std::vector<Boundary> out;
  const double x_lo = spec.x.Center(0), x_hi = spec.x.Center(grid.cols - 1);
  const double y_lo = spec.y.Center(0), y_hi = spec.y.Center(grid.rows - 1);
  const double half = internal::HalfLine(spec);
  const double full = internal::FullLine(spec);

  // Case only depends on x, so row 0 locates every vertical change.
  for (int i = 1; i < grid.cols; ++i) {
    if (grid.at(0, i - 1).case_id == grid.at(0, i).case_id) continue;
    const double x_mid = 0.5 * (spec.x.Center(i - 1) + spec.x.Center(i));
    const char* label = std::abs(x_mid - half) <= std::abs(x_mid - full)
                            ? kHalfLineLabel
                            : kFullLineLabel;
    out.push_back({label, "empirical", {{x_mid, y_lo}, {x_mid, y_hi}}});
  }

  // Frontiers, grouped into strips of constant case id.
  for (int i = 0; i < grid.cols;) {
    const int case_id = grid.at(0, i).case_id;
    Boundary strip{FrontierLabel(case_id), "empirical", {}};
    int end = i;
    for (; end < grid.cols && grid.at(0, end).case_id == case_id; ++end) {
      for (int j : internal::ColumnTransitions(grid, end)) {
        strip.points.push_back(
            {spec.x.Center(end),
             0.5 * (spec.y.Center(j - 1) + spec.y.Center(j))});
      }
    }
    if (!strip.points.empty()) out.push_back(std::move(strip));
    i = end;
  }

  for (const auto& [value, label] :
       {std::pair{half, kHalfLineLabel}, std::pair{full, kFullLineLabel}}) {
    if (value > x_lo && value < x_hi) {
      out.push_back({label, "analytic", {{value, y_lo}, {value, y_hi}}});
    }
  }
  for (int i = 0; i < grid.cols;) {
    const int case_id = grid.at(0, i).case_id;
    Boundary strip{FrontierLabel(case_id), "analytic", {}};
    int end = i;
    for (; end < grid.cols && grid.at(0, end).case_id == case_id; ++end) {
      const double x = spec.x.Center(end);
      const double y = internal::AnalyticFrontier(spec, case_id, x);
      if (y >= y_lo && y < y_hi) strip.points.push_back({x, y});
    }
    if (!strip.points.empty()) out.push_back(std::move(strip));
    i = end;
  }
  return out;
}

inline RegionGrid Sweep(const SweepSpec& spec, int threads = 1) {
  ValidateSweepSpec(spec);
  RegionGrid grid;
  grid.cols = spec.x.resolution;
  grid.rows = spec.y.resolution;
  grid.cells.resize(static_cast<std::size_t>(grid.cols) * grid.rows);
  ParallelFor(grid.cells.size(), threads, [&](std::size_t idx) {
    const int row = static_cast<int>(idx / grid.cols);
    const int col = static_cast<int>(idx % grid.cols);
    grid.cells[idx] =
        ClassifyCell(spec, spec.x.Center(col), spec.y.Center(row));
  });
  grid.boundaries = ExtractBoundaries(grid, spec);
  return grid;
}

// ---------------------------------------------------------------------------
// Empirical versus closed-form boundaries, in units of cell width/height.

struct BoundaryAgreement {
  double max_vertical_error = 0.0;
  double max_frontier_error = 0.0;
  int unmatched = 0;      // curves present on one side only
  bool monotone = true;   // at most one coop -> competition change per column

  bool Agrees() const {
    return max_vertical_error <= 1.0 && max_frontier_error <= 1.0 &&
           unmatched == 0 && monotone;
  }
};

inline BoundaryAgreement CompareBoundaries(const RegionGrid& grid,
                                           const SweepSpec& spec) {
  BoundaryAgreement report;
  const double dx = spec.x.CellWidth();
  const double dy = spec.y.CellWidth();
  const double x_lo = spec.x.Center(0), x_hi = spec.x.Center(grid.cols - 1);
  const double y_lo = spec.y.Center(0), y_hi = spec.y.Center(grid.rows - 1);

  std::vector<double> analytic_lines;
  for (double v : {internal::HalfLine(spec), internal::FullLine(spec)}) {
    if (v > x_lo && v < x_hi) analytic_lines.push_back(v);
  }
  std::vector<double> empirical_lines;
  for (const Boundary& b : grid.boundaries) {
    if (b.source == "empirical" &&
        (b.label == kHalfLineLabel || b.label == kFullLineLabel)) {
      empirical_lines.push_back(b.points.front()[0]);
    }
  }
  auto nearest = [](double v, const std::vector<double>& pool) {
    double best = std::numeric_limits<double>::infinity();
    for (double p : pool) best = std::min(best, std::abs(v - p));
    return best;
  };
  for (double e : empirical_lines) {
    const double err = nearest(e, analytic_lines) / dx;
    if (!std::isfinite(err)) {
      ++report.unmatched;
    } else {
      report.max_vertical_error = std::max(report.max_vertical_error, err);
    }
  }
  for (double a : analytic_lines) {
    if (nearest(a, empirical_lines) / dx > 1.0) ++report.unmatched;
  }

  for (int col = 0; col < grid.cols; ++col) {
    const int case_id = grid.at(0, col).case_id;
    const double threshold =
        internal::AnalyticFrontier(spec, case_id, spec.x.Center(col));
    const std::vector<int> changes = internal::ColumnTransitions(grid, col);
    if (changes.size() > 1) report.monotone = false;
    for (int j : changes) {
      const RegionCell& below = grid.at(j - 1, col);
      const RegionCell& above = grid.at(j, col);
      for (InteractionKind k : below.kinds) {
        if (IsCompetitive(k)) report.monotone = false;
      }
      for (InteractionKind k : above.kinds) {
        if (!IsCompetitive(k)) report.monotone = false;
      }
    }
    const bool expect_change = threshold >= y_lo && threshold < y_hi;
    if (expect_change != !changes.empty()) {
      ++report.unmatched;
      continue;
    }
    if (!changes.empty()) {
      const int j = changes.front();
      const double y_mid = 0.5 * (spec.y.Center(j - 1) + spec.y.Center(j));
      report.max_frontier_error =
          std::max(report.max_frontier_error, std::abs(y_mid - threshold) / dy);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Export.

enum class ExportFormat { kCsv, kJson };

namespace internal {

inline std::string JoinKinds(const std::vector<InteractionKind>& kinds) {
  std::string out;
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    if (i) out += '|';
    out += KindName(kinds[i]);
  }
  return out;
}

inline std::string JoinRoutes(const std::vector<int>& routes) {
  std::string out;
  for (std::size_t i = 0; i < routes.size(); ++i) {
    if (i) out += '|';
    out += std::to_string(routes[i]);
  }
  return out;
}

inline nlohmann::json AxisJson(const AxisRange& axis, const char* parameter,
                               const char* varied) {
  return {{"parameter", parameter},
          {"varied", varied},
          {"min", Round9(axis.min)},
          {"max", Round9(axis.max)},
          {"resolution", axis.resolution}};
}

}  // namespace internal

inline std::string RegionsToCsv(const RegionGrid& grid) {
  std::string out = "x_value,y_value,case,kind,route\n";
  for (const RegionCell& cell : grid.cells) {
    out += FormatNumber(cell.x_value) + ',' + FormatNumber(cell.y_value) + ',' +
           std::to_string(cell.case_id) + ',' +
           internal::JoinKinds(cell.kinds) + ',' +
           internal::JoinRoutes(cell.routes) + '\n';
  }
  return out;
}

inline nlohmann::json RegionsToJson(const RegionGrid& grid,
                                    const SweepSpec& spec) {
  nlohmann::json j;
  j["spec"] = {{"x_axis", internal::AxisJson(spec.x, "c_o*delta1^2", "c_o")},
               {"y_axis", internal::AxisJson(spec.y, "E1-E2", "E2")},
               {"base", ConfigToJson(spec.base)}};
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < grid.rows; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < grid.cols; ++c) {
      const RegionCell& cell = grid.at(r, c);
      nlohmann::json kinds = nlohmann::json::array();
      for (InteractionKind k : cell.kinds) kinds.push_back(KindName(k));
      row.push_back({{"x", Round9(cell.x_value)},
                     {"y", Round9(cell.y_value)},
                     {"case", cell.case_id},
                     {"kind", kinds},
                     {"route", cell.routes}});
    }
    rows.push_back(std::move(row));
  }
  j["cells"] = std::move(rows);
  nlohmann::json boundaries = nlohmann::json::array();
  for (const Boundary& b : grid.boundaries) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : b.points) pts.push_back({Round9(p[0]), Round9(p[1])});
    boundaries.push_back(
        {{"label", b.label}, {"source", b.source}, {"points", pts}});
  }
  j["boundaries"] = std::move(boundaries);
  return j;
}

inline void ExportRegions(const RegionGrid& grid, const SweepSpec& spec,
                          ExportFormat format,
                          const std::filesystem::path& path) {
  const std::string body = format == ExportFormat::kCsv
                               ? RegionsToCsv(grid)
                               : RegionsToJson(grid, spec).dump(2) + "\n";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  }
  out << body;
  out.flush();
  if (!out) {
    throw Error(ErrorCode::kIoFailure, "write failed for " + path.string());
  }
}

}  // namespace stackelroute

#endif  // STACKELROUTE_SWEEP_HPP_
