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

// Domain types of the two-agent timing-and-route game and the utility
//
//   u_i = e_i - c_i - p_i
//
// where e_i is the territory won (first come, first served; ties go to the
// stronger agent 1), c_i = (t_i - t_o)^2 / beta_i + c_o^i * delta(x_i) is the
// travel cost and p_i = r / (m * delta(x_i)) is the predation risk shared by
// the m agents that arrive at the same time on the same route.

#ifndef STACKELROUTE_GAME_HPP_
#define STACKELROUTE_GAME_HPP_

#include <array>
#include <cmath>
#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stackelroute/error.hpp"

namespace stackelroute {

enum class Agent { kOne = 0, kTwo = 1 };

constexpr std::size_t AgentIndex(Agent agent) {
  return static_cast<std::size_t>(agent);
}

// Route handle. Public API speaks 1-based indices; storage is 0-based.
class Route {
 public:
  constexpr Route() = default;

  static constexpr Route FromOneBased(int k) { return Route(k - 1); }
  static constexpr Route FromIndex(std::size_t i) {
    return Route(static_cast<int>(i));
  }

  constexpr int one_based() const { return zero_based_ + 1; }
  constexpr std::size_t index() const {
    return static_cast<std::size_t>(zero_based_);
  }
  constexpr bool ValidFor(std::size_t num_routes) const {
    return zero_based_ >= 0 &&
           static_cast<std::size_t>(zero_based_) < num_routes;
  }

  friend constexpr auto operator<=>(Route, Route) = default;

 private:
  explicit constexpr Route(int zero_based) : zero_based_(zero_based) {}

  int zero_based_ = 0;
};

struct AgentParams {
  double beta = 1.0;  // strength
  double c_o = 0.0;   // marginal travel cost per unit of difficulty
};

class RouteSet {
 public:
  RouteSet() = default;
  explicit RouteSet(std::vector<double> deltas) : deltas_(std::move(deltas)) {}

  std::size_t size() const { return deltas_.size(); }
  std::span<const double> deltas() const { return deltas_; }

  double Difficulty(Route route) const {
    if (!route.ValidFor(deltas_.size())) {
      throw Error(ErrorCode::kInvalidRouteIndex,
                  "route " + std::to_string(route.one_based()) +
                      " outside 1.." + std::to_string(deltas_.size()));
    }
    return deltas_[route.index()];
  }

  // delta_k / delta_1; for two routes Ratio(Route::FromOneBased(2)) is lambda.
  double Ratio(Route route) const { return Difficulty(route) / deltas_[0]; }

 private:
  std::vector<double> deltas_;
};

struct Territories {
  double better = 0.0;  // E1
  double worse = 0.0;   // E2

  double Gap() const { return better - worse; }
};

// Unvalidated parameter record, exactly as read from a config file.
struct RawConfig {
  std::array<double, 2> beta{};
  std::array<double, 2> c_o{};
  std::vector<double> delta;
  std::array<double, 2> territory{};
  double r = 0.0;
  double t_o = 0.0;
};

class GameConfig {
 public:
  // Enforces beta1 > beta2 > 0, c_o > 0, 1 <= delta_1 < ... < delta_n,
  // E1 > E2 > 0 and r > 0.
  static GameConfig Validate(const RawConfig& raw);

  const AgentParams& agent(Agent a) const { return agents_[AgentIndex(a)]; }
  const AgentParams& agent1() const { return agents_[0]; }
  const AgentParams& agent2() const { return agents_[1]; }
  const RouteSet& routes() const { return routes_; }
  const Territories& territories() const { return territories_; }
  double r() const { return r_; }
  double t_o() const { return t_o_; }

  std::size_t num_routes() const { return routes_.size(); }
  bool homogeneous() const { return agents_[0].c_o == agents_[1].c_o; }

  // lambda = delta_2 / delta_1. Only meaningful with at least two routes.
  double lambda() const { return routes_.Ratio(Route::FromOneBased(2)); }

  RawConfig ToRaw() const;

 private:
  GameConfig() = default;

  std::array<AgentParams, 2> agents_{};
  RouteSet routes_;
  Territories territories_{};
  double r_ = 0.0;
  double t_o_ = 0.0;
};

struct ActionProfile {
  double t1 = 0.0;
  Route x1;
  double t2 = 0.0;
  Route x2;

  double time(Agent a) const { return a == Agent::kOne ? t1 : t2; }
  Route route(Agent a) const { return a == Agent::kOne ? x1 : x2; }

  friend bool operator==(const ActionProfile&, const ActionProfile&) = default;
};

using Utilities = std::array<double, 2>;

// Territory values (e_1, e_2) for the two arrival times.
inline std::pair<double, double> Benefit(double t1, double t2,
                                         const Territories& territories) {
  if (t1 <= t2) return {territories.better, territories.worse};
  return {territories.worse, territories.better};
}

inline double TravelCost(const AgentParams& agent, double t, Route route,
                         const GameConfig& config) {
  const double lateness = t - config.t_o();
  return lateness * lateness / agent.beta +
         agent.c_o * config.routes().Difficulty(route);
}

// Head-count uses exact equality of time and route.
inline double Risk(const ActionProfile& profile, const GameConfig& config,
                   Agent agent) {
  const Route route = profile.route(agent);
  const double delta = config.routes().Difficulty(route);
  const int flock =
      (profile.t1 == profile.t2 && profile.x1 == profile.x2) ? 2 : 1;
  return config.r() / (flock * delta);
}

inline Utilities EvaluateUtility(const ActionProfile& profile,
                                 const GameConfig& config) {
  const auto [e1, e2] = Benefit(profile.t1, profile.t2, config.territories());
  const double u1 = e1 - TravelCost(config.agent1(), profile.t1, profile.x1,
                                    config) -
                    Risk(profile, config, Agent::kOne);
  const double u2 = e2 - TravelCost(config.agent2(), profile.t2, profile.x2,
                                    config) -
                    Risk(profile, config, Agent::kTwo);
  return {u1, u2};
}

// ---------------------------------------------------------------------------

namespace internal {

inline bool PositiveFinite(double v) { return std::isfinite(v) && v > 0.0; }

inline void RequirePositive(double v, const char* name) {
  if (!PositiveFinite(v)) {
    throw Error(ErrorCode::kNonPositiveParameter,
                std::string(name) + " must be positive and finite, got " +
                    std::to_string(v));
  }
}

}  // namespace internal

inline GameConfig GameConfig::Validate(const RawConfig& raw) {
  internal::RequirePositive(raw.beta[0], "beta[0]");
  internal::RequirePositive(raw.beta[1], "beta[1]");
  internal::RequirePositive(raw.c_o[0], "c_o[0]");
  internal::RequirePositive(raw.c_o[1], "c_o[1]");
  internal::RequirePositive(raw.territory[0], "E[0]");
  internal::RequirePositive(raw.territory[1], "E[1]");
  internal::RequirePositive(raw.r, "r");
  if (!std::isfinite(raw.t_o)) {
    throw Error(ErrorCode::kNonPositiveParameter, "t_o must be finite");
  }
  if (raw.delta.empty()) {
    throw Error(ErrorCode::kNonIncreasingDifficulties,
                "at least one route is required");
  }
  for (double d : raw.delta) internal::RequirePositive(d, "delta");
  if (raw.delta.front() < 1.0) {
    throw Error(ErrorCode::kNonIncreasingDifficulties,
                "delta[0] must be >= 1");
  }
  for (std::size_t k = 1; k < raw.delta.size(); ++k) {
    if (!(raw.delta[k] > raw.delta[k - 1])) {
      throw Error(ErrorCode::kNonIncreasingDifficulties,
                  "delta must be strictly increasing (index " +
                      std::to_string(k) + ")");
    }
  }
  if (!(raw.beta[0] > raw.beta[1])) {
    throw Error(ErrorCode::kBetaOrderViolated, "beta[0] must exceed beta[1]");
  }
  if (!(raw.territory[0] > raw.territory[1])) {
    throw Error(ErrorCode::kTerritoryOrderViolated, "E[0] must exceed E[1]");
  }

  GameConfig config;
  config.agents_ = {AgentParams{raw.beta[0], raw.c_o[0]},
                    AgentParams{raw.beta[1], raw.c_o[1]}};
  config.routes_ = RouteSet(raw.delta);
  config.territories_ = Territories{raw.territory[0], raw.territory[1]};
  config.r_ = raw.r;
  config.t_o_ = raw.t_o;
  return config;
}

inline RawConfig GameConfig::ToRaw() const {
  RawConfig raw;
  raw.beta = {agents_[0].beta, agents_[1].beta};
  raw.c_o = {agents_[0].c_o, agents_[1].c_o};
  raw.delta.assign(routes_.deltas().begin(), routes_.deltas().end());
  raw.territory = {territories_.better, territories_.worse};
  raw.r = r_;
  raw.t_o = t_o_;
  return raw;
}

}  // namespace stackelroute

#endif  // STACKELROUTE_GAME_HPP_
