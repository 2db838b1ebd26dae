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

// Closed-form subgame perfect equilibria.
//
// Every pure SPE has the follower at t_o and the leader either at t_o
// (cooperation) or at the tipping time T = t_o - sqrt((E1 - E2) * beta2),
// where the follower is indifferent between arriving alone at t_o and
// arriving first just before the leader.
//
// Tie ledger shared with the grid oracle:
//   * route ties go to the lowest index;
//   * a follower indifferent between a later and an earlier arrival picks
//     the later one (so indifference between joining and preempting means
//     joining);
//   * a leader indifferent between routes at a boundary case yields every
//     tied equilibrium.

#ifndef STACKELROUTE_ANALYTIC_HPP_
#define STACKELROUTE_ANALYTIC_HPP_

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stackelroute/error.hpp"
#include "stackelroute/game.hpp"

namespace stackelroute {

// Relative band inside which two real quantities count as equal when
// classifying boundary cases and breaking utility ties.
inline constexpr double kBoundaryRelTol = 1e-12;

inline bool NearlyEqual(double a, double b, double scale = 0.0) {
  const double ref = std::max({std::abs(a), std::abs(b), std::abs(scale)});
  return std::abs(a - b) <= kBoundaryRelTol * ref;
}

// a <= b, counting values inside the band as equal.
inline bool AtMost(double a, double b, double scale = 0.0) {
  return a <= b || NearlyEqual(a, b, scale);
}

enum class InteractionKind {
  kCooperation,
  kCompetition,
  kNeutralCooperation,
  kNeutralCompetition,
};

enum class CaseTag {
  kCase1,
  kCase2,
  kCase3,
  kCase4,
  kCase5,
  kNRoute,
  kOneRoute,
  kHeterogeneous,
  kGridOracle,
};

inline std::string_view KindName(InteractionKind kind) {
  switch (kind) {
    case InteractionKind::kCooperation:
      return "Cooperation";
    case InteractionKind::kCompetition:
      return "Competition";
    case InteractionKind::kNeutralCooperation:
      return "NeutralCooperation";
    case InteractionKind::kNeutralCompetition:
      return "NeutralCompetition";
  }
  return "Unknown";
}

inline std::string_view CaseTagName(CaseTag tag) {
  switch (tag) {
    case CaseTag::kCase1:
      return "Case1";
    case CaseTag::kCase2:
      return "Case2";
    case CaseTag::kCase3:
      return "Case3";
    case CaseTag::kCase4:
      return "Case4";
    case CaseTag::kCase5:
      return "Case5";
    case CaseTag::kNRoute:
      return "NRoute";
    case CaseTag::kOneRoute:
      return "OneRoute";
    case CaseTag::kHeterogeneous:
      return "Heterogeneous";
    case CaseTag::kGridOracle:
      return "GridOracle";
  }
  return "Unknown";
}

inline bool IsCompetitive(InteractionKind kind) {
  return kind == InteractionKind::kCompetition ||
         kind == InteractionKind::kNeutralCompetition;
}

inline InteractionKind InferKind(const ActionProfile& p) {
  if (p.t1 == p.t2) {
    return p.x1 == p.x2 ? InteractionKind::kCooperation
                        : InteractionKind::kNeutralCooperation;
  }
  return p.x1 == p.x2 ? InteractionKind::kCompetition
                      : InteractionKind::kNeutralCompetition;
}

struct Equilibrium {
  ActionProfile profile;
  InteractionKind kind = InteractionKind::kCooperation;
  CaseTag case_tag = CaseTag::kCase1;
  std::optional<double> tipping_time;  // set for competitive kinds
  std::string note;                    // empty unless something is flagged
};

// T = t_o - sqrt((E1 - E2) * beta2). Takes raw territories so the E1 == E2
// limit can be probed without a validated config.
inline double TippingTime(const Territories& territories, double beta2,
                          double t_o) {
  return t_o - std::sqrt(territories.Gap() * beta2);
}

inline double TippingTime(const GameConfig& config) {
  return TippingTime(config.territories(), config.agent2().beta, config.t_o());
}

// ---------------------------------------------------------------------------
// Route selection.

enum class RouteMode { kSolo, kFlock };

// Time-independent part of an agent's cost on a route: c_o * delta + risk.
inline double RouteCost(double c_o, double delta, double r, RouteMode mode) {
  const double company = mode == RouteMode::kFlock ? 2.0 : 1.0;
  return c_o * delta + r / (company * delta);
}

inline double RouteCost(const GameConfig& config, Agent agent, Route route,
                        RouteMode mode) {
  return RouteCost(config.agent(agent).c_o, config.routes().Difficulty(route),
                   config.r(), mode);
}

// argmin over routes of RouteCost; ties go to the lowest index.
inline Route OptimalRoute(const GameConfig& config, RouteMode mode,
                          Agent agent) {
  Route best = Route::FromIndex(0);
  double best_cost = RouteCost(config, agent, best, mode);
  for (std::size_t k = 1; k < config.num_routes(); ++k) {
    const Route route = Route::FromIndex(k);
    const double cost = RouteCost(config, agent, route, mode);
    if (cost < best_cost && !NearlyEqual(cost, best_cost)) {
      best = route;
      best_cost = cost;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Case classification for the homogeneous two-route game.

struct CaseClassification {
  int case_id = 0;
  double cost_risk_value = 0.0;  // c_o * delta_1^2
  double half_threshold = 0.0;   // r / (2 lambda)
  double full_threshold = 0.0;   // r / lambda
  double territory_gap = 0.0;    // E1 - E2
  double gap_threshold = 0.0;    // cooperate iff territory_gap <= this
};

namespace internal {

inline void RequireTwoRoutes(const GameConfig& config) {
  if (config.num_routes() != 2) {
    throw Error(ErrorCode::kNotTwoRoutes,
                "expected 2 routes, got " + std::to_string(config.num_routes()));
  }
}

inline void RequireHomogeneous(const GameConfig& config) {
  if (!config.homogeneous()) {
    throw Error(ErrorCode::kHeterogeneousCosts,
                "closed form requires c_o[0] == c_o[1]");
  }
}

}  // namespace internal

// Gap threshold for a case id, as a function of the cost-risk value.
inline double GapThreshold(int case_id, double cost_risk_value, double delta1,
                           double lambda, double r) {
  const double c_o = cost_risk_value / (delta1 * delta1);
  switch (case_id) {
    case 1:
    case 2:
      return r / (2.0 * lambda * delta1);
    case 3:
    case 5:
      return (lambda - 1.0) * c_o * delta1 -
             (lambda - 2.0) * r / (2.0 * lambda * delta1);
    case 4:
      return r / (2.0 * delta1);
    default:
      throw std::invalid_argument("case id must be in 1..5");
  }
}

inline int CaseIdFor(double cost_risk_value, double half_threshold,
                     double full_threshold) {
  if (NearlyEqual(cost_risk_value, half_threshold)) return 2;
  if (cost_risk_value < half_threshold) return 1;
  if (NearlyEqual(cost_risk_value, full_threshold)) return 5;
  if (cost_risk_value < full_threshold) return 3;
  return 4;
}

inline CaseClassification ClassifyCase(const GameConfig& config) {
  internal::RequireTwoRoutes(config);
  internal::RequireHomogeneous(config);
  const double delta1 = config.routes().deltas()[0];
  const double lambda = config.lambda();
  const double r = config.r();

  CaseClassification c;
  c.cost_risk_value = config.agent1().c_o * delta1 * delta1;
  c.half_threshold = r / (2.0 * lambda);
  c.full_threshold = r / lambda;
  c.territory_gap = config.territories().Gap();
  c.case_id = CaseIdFor(c.cost_risk_value, c.half_threshold, c.full_threshold);
  c.gap_threshold = GapThreshold(c.case_id, c.cost_risk_value, delta1, lambda, r);
  return c;
}

// ---------------------------------------------------------------------------
// Follower best response with left-limit preemption.

struct Concrete {
  double t = 0.0;
  Route x;
  friend bool operator==(const Concrete&, const Concrete&) = default;
};

// Arrive at t_ref - eps on route x, eps -> 0.
struct PreemptLeftLimit {
  double t_ref = 0.0;
  Route x;
  friend bool operator==(const PreemptLeftLimit&,
                         const PreemptLeftLimit&) = default;
};

using BestResponse = std::variant<Concrete, PreemptLeftLimit>;

// Utilities when the leader plays (t1, x1) and the follower replies. A
// preempting reply is evaluated in the eps -> 0 limit: the follower pays its
// time cost at t_ref, wins the better territory and travels alone.
inline Utilities ReplyUtilities(double t1, Route x1, const BestResponse& reply,
                                const GameConfig& config) {
  if (const auto* c = std::get_if<Concrete>(&reply)) {
    return EvaluateUtility(ActionProfile{t1, x1, c->t, c->x}, config);
  }
  const auto& p = std::get<PreemptLeftLimit>(reply);
  const Territories& e = config.territories();
  const double u1 = e.worse - TravelCost(config.agent1(), t1, x1, config) -
                    config.r() / config.routes().Difficulty(x1);
  const double u2 = e.better -
                    TravelCost(config.agent2(), p.t_ref, p.x, config) -
                    config.r() / config.routes().Difficulty(p.x);
  return {u1, u2};
}

namespace internal {

struct ReplyCandidate {
  BestResponse reply;
  double time;  // preempting sorts just below its reference time
  bool preempt;
};

// Every reply that can be optimal, ordered by the tie ledger: later arrival
// first, a preempt just below its reference time, then lower route index.
// Other arrival times are dominated by one of these.
inline std::vector<ReplyCandidate> FollowerCandidates(double t1, Route x1,
                                                      const GameConfig& config) {
  std::vector<ReplyCandidate> out;
  const std::size_t n = config.num_routes();
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back({Concrete{config.t_o(), Route::FromIndex(k)}, config.t_o(),
                   false});
  }
  if (t1 != config.t_o()) {
    out.push_back({Concrete{t1, x1}, t1, false});
  }
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back({PreemptLeftLimit{t1, Route::FromIndex(k)}, t1, true});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const ReplyCandidate& a, const ReplyCandidate& b) {
                     if (a.time != b.time) return a.time > b.time;
                     return !a.preempt && b.preempt;
                   });
  return out;
}

}  // namespace internal

inline BestResponse BestResponseAgent2(double t1, Route x1,
                                       const GameConfig& config) {
  config.routes().Difficulty(x1);  // validates the leader's route
  const double scale = config.territories().better;
  std::optional<BestResponse> best;
  double best_u2 = 0.0;
  for (const auto& cand : internal::FollowerCandidates(t1, x1, config)) {
    const double u2 = ReplyUtilities(t1, x1, cand.reply, config)[1];
    if (!best || (u2 > best_u2 && !NearlyEqual(u2, best_u2, scale))) {
      best = cand.reply;
      best_u2 = u2;
    }
  }
  return *best;
}

// ---------------------------------------------------------------------------
// Solvers.

namespace internal {

inline Equilibrium MakeEquilibrium(double t1, Route x1, double t2, Route x2,
                                   CaseTag tag, double tipping) {
  Equilibrium eq;
  eq.profile = ActionProfile{t1, x1, t2, x2};
  eq.kind = InferKind(eq.profile);
  eq.case_tag = tag;
  if (IsCompetitive(eq.kind)) eq.tipping_time = tipping;
  return eq;
}

inline Equilibrium Cooperate(const GameConfig& config, int route, CaseTag tag) {
  const Route x = Route::FromOneBased(route);
  return MakeEquilibrium(config.t_o(), x, config.t_o(), x, tag,
                         TippingTime(config));
}

inline Equilibrium Compete(const GameConfig& config, int route, CaseTag tag) {
  const Route x = Route::FromOneBased(route);
  const double tipping = TippingTime(config);
  return MakeEquilibrium(tipping, x, config.t_o(), x, tag, tipping);
}

inline CaseTag TagForCase(int case_id) {
  return static_cast<CaseTag>(case_id - 1);
}

}  // namespace internal

inline std::vector<Equilibrium> SolveTwoRoute(const GameConfig& config) {
  const CaseClassification c = ClassifyCase(config);
  const CaseTag tag = internal::TagForCase(c.case_id);
  const bool cooperate =
      AtMost(c.territory_gap, c.gap_threshold, c.territory_gap);
  using internal::Compete;
  using internal::Cooperate;
  switch (c.case_id) {
    case 1:
      if (cooperate) return {Cooperate(config, 2, tag)};
      return {Compete(config, 2, tag)};
    case 2:
      if (cooperate) {
        return {Cooperate(config, 1, tag), Cooperate(config, 2, tag)};
      }
      return {Compete(config, 2, tag)};
    case 3:
      if (cooperate) return {Cooperate(config, 1, tag)};
      return {Compete(config, 2, tag)};
    case 4:
      if (cooperate) return {Cooperate(config, 1, tag)};
      return {Compete(config, 1, tag)};
    case 5: {
      if (cooperate) return {Cooperate(config, 1, tag)};
      std::vector<Equilibrium> both = {Compete(config, 1, tag),
                                       Compete(config, 2, tag)};
      for (auto& eq : both) {
        eq.note =
            "routes tie for solo travel; both listed, a lowest-index "
            "tie-break would select route 1";
      }
      return both;
    }
  }
  throw std::logic_error("unreachable case id");
}

inline std::vector<Equilibrium> SolveNRoute(const GameConfig& config) {
  internal::RequireHomogeneous(config);
  const Route flock = OptimalRoute(config, RouteMode::kFlock, Agent::kOne);
  const Route solo = OptimalRoute(config, RouteMode::kSolo, Agent::kOne);
  const double margin = RouteCost(config, Agent::kTwo, solo, RouteMode::kSolo) -
                        RouteCost(config, Agent::kTwo, flock, RouteMode::kFlock);
  const double gap = config.territories().Gap();
  if (AtMost(gap, margin, gap)) {
    return {internal::Cooperate(config, flock.one_based(), CaseTag::kNRoute)};
  }
  return {internal::Compete(config, solo.one_based(), CaseTag::kNRoute)};
}

inline std::vector<Equilibrium> SolveOneRoute(const GameConfig& config) {
  if (config.num_routes() != 1) {
    throw Error(ErrorCode::kNotOneRoute,
                "expected 1 route, got " + std::to_string(config.num_routes()));
  }
  const double gap = config.territories().Gap();
  const double threshold = config.r() / (2.0 * config.routes().deltas()[0]);
  if (AtMost(gap, threshold, gap)) {
    return {internal::Cooperate(config, 1, CaseTag::kOneRoute)};
  }
  return {internal::Compete(config, 1, CaseTag::kOneRoute)};
}

namespace internal {

// Leader utility of (t1, x1) when the follower best-responds.
inline double LeaderValue(double t1, Route x1, const GameConfig& config) {
  return ReplyUtilities(t1, x1, BestResponseAgent2(t1, x1, config), config)[0];
}

// Unilateral deviation scan over the finite candidate set: follower replies
// {routes} x {t_o, join, preempt-limit}, leader actions {routes} x {t_o, T}.
inline bool HasNoLimitDeviation(const ActionProfile& p,
                                const GameConfig& config) {
  const double scale = config.territories().better;
  const double u2 = EvaluateUtility(p, config)[1];
  for (const auto& cand : FollowerCandidates(p.t1, p.x1, config)) {
    const double alt = ReplyUtilities(p.t1, p.x1, cand.reply, config)[1];
    if (alt > u2 && !NearlyEqual(alt, u2, scale)) return false;
  }
  const double u1 = LeaderValue(p.t1, p.x1, config);
  for (double t : {config.t_o(), TippingTime(config)}) {
    for (std::size_t k = 0; k < config.num_routes(); ++k) {
      const double alt = LeaderValue(t, Route::FromIndex(k), config);
      if (alt > u1 && !NearlyEqual(alt, u1, scale)) return false;
    }
  }
  return true;
}

}  // namespace internal

// Two routes with c_o[0] <= c_o[1]. The leader's optimum is at t_o or T (any
// other time is dominated), so the solver scores {t_o, T} x {routes} under
// the follower's best response and keeps every maximizer.
inline std::vector<Equilibrium> SolveHeterogeneous(const GameConfig& config) {
  internal::RequireTwoRoutes(config);
  if (config.agent1().c_o > config.agent2().c_o) {
    throw Error(ErrorCode::kCostOrderViolated,
                "heterogeneous extension requires c_o[0] <= c_o[1]");
  }
  if (config.homogeneous()) return SolveTwoRoute(config);

  const double tipping = TippingTime(config);
  const double scale = config.territories().better;

  struct Scored {
    double t1;
    Route x1;
    BestResponse reply;
    double u1;
  };
  std::vector<Scored> scored;
  for (double t : {config.t_o(), tipping}) {
    for (std::size_t k = 0; k < config.num_routes(); ++k) {
      const Route x = Route::FromIndex(k);
      const BestResponse reply = BestResponseAgent2(t, x, config);
      scored.push_back({t, x, reply, ReplyUtilities(t, x, reply, config)[0]});
    }
  }
  double best = scored.front().u1;
  for (const auto& s : scored) best = std::max(best, s.u1);

  std::vector<Equilibrium> out;
  for (const auto& s : scored) {
    if (!NearlyEqual(s.u1, best, scale)) continue;
    const auto* reply = std::get_if<Concrete>(&s.reply);
    if (reply == nullptr) {
      throw std::logic_error("leader optimum leaves the follower preempting");
    }
    Equilibrium eq = internal::MakeEquilibrium(s.t1, s.x1, reply->t, reply->x,
                                               CaseTag::kHeterogeneous, tipping);
    if (!internal::HasNoLimitDeviation(eq.profile, config)) {
      throw std::logic_error("heterogeneous candidate fails deviation check");
    }
    out.push_back(eq);
  }
  return out;
}

}  // namespace stackelroute

#endif  // STACKELROUTE_ANALYTIC_HPP_
