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

// Brute-force backward induction on a uniform time grid. The follower's
// reply to every leader action is found by exhaustive enumeration of
// grid times x routes, and the leader maximizes over the induced map.
// Only EvaluateUtility is consulted; none of the closed forms are.
//
// A one-step-earlier arrival on the grid stands in for the left-limit
// preemption of the continuous game, so agreement with the analytic
// solvers is stated in units of the step h.

#ifndef STACKELROUTE_ORACLE_HPP_
#define STACKELROUTE_ORACLE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stackelroute/analytic.hpp"
#include "stackelroute/error.hpp"
#include "stackelroute/game.hpp"
#include "stackelroute/parallel.hpp"

namespace stackelroute {

struct StrategyGrid {
  std::vector<double> times;  // ascending; back() == t_o exactly
  double step = 0.0;
  std::size_t num_routes = 0;

  double t_min() const { return times.front(); }
  double t_max() const { return times.back(); }
};

inline constexpr std::size_t kMaxGridPoints = 20'000'000;

// Anchored at t_o and stepping down by h. The extent covers the follower's
// preemption reach sqrt((E1 - E2) * beta2) plus ten extra steps, so any
// competitive leader optimum is interior.
inline StrategyGrid BuildGrid(const GameConfig& config, double step) {
  if (!(std::isfinite(step) && step > 0.0)) {
    throw Error(ErrorCode::kNonPositiveStep,
                "grid step must be positive, got " + std::to_string(step));
  }
  const double reach =
      std::sqrt(config.territories().Gap() * config.agent2().beta);
  const double steps_below = std::ceil(reach / step) + 10.0;
  if (steps_below + 1.0 > static_cast<double>(kMaxGridPoints)) {
    throw Error(ErrorCode::kInvalidRange,
                "grid step too small: " + std::to_string(steps_below) +
                    " points");
  }
  const auto k_max = static_cast<std::size_t>(steps_below);
  StrategyGrid grid;
  grid.step = step;
  grid.num_routes = config.num_routes();
  grid.times.resize(k_max + 1);
  for (std::size_t k = 0; k <= k_max; ++k) {
    grid.times[k] = config.t_o() - static_cast<double>(k_max - k) * step;
  }
  return grid;
}

struct GridReply {
  double t = 0.0;
  Route x;
  Utilities utilities{};
};

namespace internal {

// Exhaustive follower scan. Candidate times are the grid plus the leader's
// own time (so joining is always possible). Preference order for ties: later
// time, then lower route index.
inline GridReply ScanFollower(double t1, Route x1, const GameConfig& config,
                              const StrategyGrid& grid) {
  const double scale = config.territories().better;
  const bool leader_on_grid =
      std::binary_search(grid.times.begin(), grid.times.end(), t1);
  std::optional<GridReply> best;

  auto consider = [&](double t2) {
    for (std::size_t k = 0; k < grid.num_routes; ++k) {
      const Route x2 = Route::FromIndex(k);
      const Utilities u = EvaluateUtility(ActionProfile{t1, x1, t2, x2}, config);
      if (!best || (u[1] > best->utilities[1] &&
                    !NearlyEqual(u[1], best->utilities[1], scale))) {
        best = GridReply{t2, x2, u};
      }
    }
  };

  bool leader_time_done = leader_on_grid;
  for (auto it = grid.times.rbegin(); it != grid.times.rend(); ++it) {
    if (!leader_time_done && t1 > *it) {
      consider(t1);
      leader_time_done = true;
    }
    consider(*it);
  }
  if (!leader_time_done) consider(t1);
  return *best;
}

struct LeaderChoice {
  double t1 = 0.0;
  Route x1;
  GridReply reply;
};

// Backward induction over every leader action on the grid.
inline LeaderChoice ScanLeader(const GameConfig& config,
                               const StrategyGrid& grid, int threads) {
  const std::size_t n_times = grid.times.size();
  const std::size_t n_routes = grid.num_routes;
  std::vector<GridReply> replies(n_times * n_routes);
  ParallelFor(n_times, threads, [&](std::size_t i) {
    for (std::size_t k = 0; k < n_routes; ++k) {
      replies[i * n_routes + k] =
          ScanFollower(grid.times[i], Route::FromIndex(k), config, grid);
    }
  });

  const double scale = config.territories().better;
  std::optional<LeaderChoice> best;
  for (std::size_t i = n_times; i-- > 0;) {
    for (std::size_t k = 0; k < n_routes; ++k) {
      const GridReply& reply = replies[i * n_routes + k];
      if (!best || (reply.utilities[0] > best->reply.utilities[0] &&
                    !NearlyEqual(reply.utilities[0],
                                 best->reply.utilities[0], scale))) {
        best = LeaderChoice{grid.times[i], Route::FromIndex(k), reply};
      }
    }
  }
  return *best;
}

inline std::size_t GridIndexOf(double t, const StrategyGrid& grid) {
  const auto it = std::lower_bound(grid.times.begin(), grid.times.end(),
                                   t - 1e-9 * grid.step);
  if (it == grid.times.end() || std::abs(*it - t) > 1e-9 * grid.step) {
    throw Error(ErrorCode::kLeaderActionOffGrid,
                "leader time " + std::to_string(t) + " is not a grid point");
  }
  return static_cast<std::size_t>(it - grid.times.begin());
}

}  // namespace internal

inline std::pair<double, Route> OracleBestResponse(double t1, Route x1,
                                                   const GameConfig& config,
                                                   const StrategyGrid& grid) {
  config.routes().Difficulty(x1);
  const double on_grid = grid.times[internal::GridIndexOf(t1, grid)];
  const GridReply reply = internal::ScanFollower(on_grid, x1, config, grid);
  return {reply.t, reply.x};
}

inline Equilibrium OracleSolve(const GameConfig& config,
                               const StrategyGrid& grid, int threads = 1) {
  const internal::LeaderChoice choice =
      internal::ScanLeader(config, grid, threads);
  Equilibrium eq;
  eq.profile = ActionProfile{choice.t1, choice.x1, choice.reply.t,
                             choice.reply.x};
  eq.kind = InferKind(eq.profile);
  eq.case_tag = CaseTag::kGridOracle;
  return eq;
}

// ---------------------------------------------------------------------------

struct Deviation {
  Agent agent = Agent::kOne;
  double t = 0.0;
  Route x;
  double gain = 0.0;
};

struct DeviationReport {
  bool is_spe = true;
  std::optional<Deviation> best_deviation;
};

// Gains at or below this are treated as discretization artifacts.
inline double DeviationMargin(const GameConfig& config,
                              const StrategyGrid& grid) {
  const double h = grid.step;
  const double beta2 = config.agent2().beta;
  return 2.0 * h *
         (std::abs(config.t_o() - grid.t_min()) / beta2 + h / beta2);
}

// Checks the follower's action against its exhaustive grid reply at the
// candidate leader action, then the leader's action against the best leader
// action under the follower's full reply map. Candidate times need not lie
// on the grid; the follower's reply set then also contains the leader time.
inline DeviationReport VerifySpe(const ActionProfile& candidate,
                                 const GameConfig& config,
                                 const StrategyGrid& grid, int threads = 1) {
  const double margin = DeviationMargin(config, grid);
  const Utilities actual = EvaluateUtility(candidate, config);

  const GridReply follower =
      internal::ScanFollower(candidate.t1, candidate.x1, config, grid);
  const double follower_gain = follower.utilities[1] - actual[1];

  const internal::LeaderChoice leader =
      internal::ScanLeader(config, grid, threads);
  const double leader_gain =
      leader.reply.utilities[0] - follower.utilities[0];

  DeviationReport report;
  if (follower_gain > margin || leader_gain > margin) {
    report.is_spe = false;
    if (follower_gain >= leader_gain) {
      report.best_deviation =
          Deviation{Agent::kTwo, follower.t, follower.x, follower_gain};
    } else {
      report.best_deviation =
          Deviation{Agent::kOne, leader.t1, leader.x1, leader_gain};
    }
  }
  return report;
}

}  // namespace stackelroute

#endif  // STACKELROUTE_ORACLE_HPP_
