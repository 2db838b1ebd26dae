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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "stackelroute/stackelroute.hpp"

namespace stackelroute {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : rng_(seed) {}
  double operator()(double lo, double hi) { return lo + (hi - lo) * unit_(rng_); }

 private:
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

int Threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

double RelativeStep(const GameConfig& config) {
  return 1e-3 * std::max(config.t_o() - TippingTime(config), 1.0);
}

// Everything that leaves the solvers is checked against the structural invariants.
struct InvariantLedger {
  long checked = 0;
  long violations = 0;
  std::string first;

  void Check(const Equilibrium& eq, const GameConfig& config,
             std::optional<double> oracle_step) {
    ++checked;
    const ActionProfile& p = eq.profile;
    const double tipping = TippingTime(config);
    std::string why;
    if (p.t2 != config.t_o()) why = "t2 != t_o";
    if (p.t1 > config.t_o()) why = "t1 > t_o";
    if (config.homogeneous() && p.x1 != p.x2) why = "x1 != x2";
    const double tol = oracle_step ? 2.0 * *oracle_step : 1e-12 * std::abs(tipping);
    if (std::abs(p.t1 - tipping) > tol && std::abs(p.t1 - config.t_o()) > tol) {
      why = "t1 not in {T, t_o}";
    }
    if (!why.empty()) {
      if (violations++ == 0) first = why + " at " + ProfileText(p);
    }
  }
};

// ---------------------------------------------------------------------------
// Criterion 1.

// Expected SPE set per case and sub-case: (cooperate, leader route) pairs.
std::set<std::pair<bool, int>> TableEntry(int case_id, bool cooperate) {
  if (cooperate) {
    if (case_id == 1) return {{true, 2}};
    if (case_id == 2) return {{true, 1}, {true, 2}};
    return {{true, 1}};
  }
  if (case_id == 4) return {{false, 1}};
  if (case_id == 5) return {{false, 1}, {false, 2}};
  return {{false, 2}};
}

double ExpectedThreshold(int case_id, double c_o, double delta1, double lambda,
                         double r) {
  if (case_id <= 2) return r / (2 * lambda * delta1);
  if (case_id == 4) return r / (2 * delta1);
  return (lambda - 1) * c_o * delta1 - (lambda - 2) * r / (2 * lambda * delta1);
}

struct Stratified {
  GameConfig config;
  int case_id;
  bool cooperate;
};

// Draws until the config has a 10h margin from every boundary it is not
// constructed to sit on.
Stratified DrawForCase(Uniform& u, int case_id, bool cooperate) {
  for (;;) {
    const double delta1 = u(1.0, 3.0);
    const double lambda = u(1.2, 4.0);
    const double r = u(0.5, 2.0);
    const double half = r / (2 * lambda), full = r / lambda;
    double x = 0;
    switch (case_id) {
      case 1: x = u(0.02, 0.98) * half; break;
      case 2: x = half; break;
      case 3: x = u(half, full); break;
      case 4: x = full * u(1.02, 3.0); break;
      case 5: x = full; break;
    }
    const double c_o = x / (delta1 * delta1);
    const double threshold = ExpectedThreshold(case_id, c_o, delta1, lambda, r);
    const double gap = cooperate ? threshold * u(0.02, 0.95)
                                 : threshold * u(1.05, 4.0) + u(0.0, 1.0);
    const double beta2 = u(0.5, 3.0);
    const double e2 = u(1.0, 5.0);
    RawConfig raw;
    raw.beta = {beta2 * u(1.1, 3.0), beta2};
    raw.c_o = {c_o, c_o};
    raw.delta = {delta1, delta1 * lambda};
    raw.territory = {e2 + gap, e2};
    raw.r = r;
    raw.t_o = u(-5.0, 20.0);
    const GameConfig config = GameConfig::Validate(raw);

    const double h = RelativeStep(config);
    const double gap_actual = config.territories().Gap();
    if (std::abs(gap_actual - threshold) < 10 * h) continue;
    if (case_id != 2 && std::abs(x - half) < 10 * h) continue;
    if (case_id != 5 && std::abs(x - full) < 10 * h) continue;
    return {config, case_id, cooperate};
  }
}

Outcome CriterionTable(InvariantLedger& ledger) {
  Uniform u(101);
  std::vector<Stratified> configs;
  for (int case_id = 1; case_id <= 5; ++case_id) {
    for (int i = 0; i < 200; ++i) {
      configs.push_back(DrawForCase(u, case_id, i % 2 == 0));
    }
  }
  const int threads = Threads();
  int table_ok = 0, oracle_ok = 0;
  std::string first;
  const auto start = Clock::now();
  for (const Stratified& s : configs) {
    const auto eqs = SolveTwoRoute(s.config);
    std::set<std::pair<bool, int>> got;
    bool times_ok = true;
    for (const auto& eq : eqs) {
      got.insert({!IsCompetitive(eq.kind), eq.profile.x1.one_based()});
      const double want_t1 = IsCompetitive(eq.kind) ? TippingTime(s.config)
                                                    : s.config.t_o();
      times_ok &= eq.profile.t1 == want_t1;
      ledger.Check(eq, s.config, std::nullopt);
    }
    const bool table_match =
        ClassifyCase(s.config).case_id == s.case_id &&
        got == TableEntry(s.case_id, s.cooperate) && times_ok;
    table_ok += table_match;
    if (!table_match && first.empty()) {
      first = "table mismatch in case " + std::to_string(s.case_id);
    }

    const StrategyGrid grid = BuildGrid(s.config, RelativeStep(s.config));
    const Equilibrium found = OracleSolve(s.config, grid, threads);
    ledger.Check(found, s.config, grid.step);
    bool agrees = false;
    for (const auto& eq : eqs) {
      agrees |= found.kind == eq.kind && found.profile.x1 == eq.profile.x1 &&
                found.profile.x2 == eq.profile.x2 &&
                std::abs(found.profile.t1 - eq.profile.t1) <= 2 * grid.step;
    }
    oracle_ok += agrees;
    if (!agrees && first.empty()) {
      first = "oracle disagrees in case " + std::to_string(s.case_id) + ": " +
              ProfileText(found.profile);
    }
  }
  const double seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  std::ostringstream d;
  d << "table " << table_ok << "/1000, oracle " << oracle_ok << "/1000, "
    << FormatNumber(seconds) << " s";
  if (!first.empty()) d << "; first: " << first;
  return {table_ok == 1000 && oracle_ok == 1000 && seconds < 300, d.str()};
}

// ---------------------------------------------------------------------------
// Criterion 2.

Outcome CriterionIndifference(InvariantLedger& ledger) {
  Uniform u(202);
  double worst = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t routes = 2 + trial % 3;
    RawConfig raw;
    const double beta2 = u(0.5, 3.0);
    raw.beta = {beta2 * u(1.1, 3.0), beta2};
    const double c_o = u(0.01, 1.0);
    raw.c_o = {c_o, c_o};
    raw.delta = {u(1.0, 3.0)};
    for (std::size_t k = 1; k < routes; ++k) {
      raw.delta.push_back(raw.delta.back() * u(1.2, 3.0));
    }
    const double e2 = u(0.5, 5.0);
    raw.territory = {e2 + u(0.0, 3.0), e2};
    raw.r = u(0.5, 2.0);
    raw.t_o = u(-5.0, 20.0);
    const GameConfig config = GameConfig::Validate(raw);
    const double tipping = TippingTime(config);
    for (std::size_t k = 0; k < routes; ++k) {
      const Route x = Route::FromIndex(k);
      const double stay =
          EvaluateUtility(ActionProfile{tipping, x, config.t_o(), x}, config)[1];
      const double preempt =
          ReplyUtilities(tipping, x, PreemptLeftLimit{tipping, x}, config)[1];
      worst = std::max(worst, std::abs(stay - preempt));
    }
    const auto eqs = routes == 2 ? SolveTwoRoute(config) : SolveNRoute(config);
    for (const auto& eq : eqs) ledger.Check(eq, config, std::nullopt);
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "max |difference| = %.3g over 10000 configs",
                worst);
  return {worst <= 1e-9, buf};
}

// ---------------------------------------------------------------------------
// Criterion 3.

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome CriterionRegionDiagram(InvariantLedger& ledger) {
  RawConfig raw;
  raw.beta = {2.0, 1.0};
  raw.c_o = {0.1, 0.1};
  raw.delta = {1.0, 2.0};
  raw.territory = {1.0, 0.9};
  raw.r = 1.0;
  raw.t_o = 10.0;
  const SweepSpec spec{GameConfig::Validate(raw), AxisRange{0.0, 1.0, 200},
                       AxisRange{0.0, 1.0, 200}};
  const RegionGrid grid = Sweep(spec, Threads());
  const double dx = spec.x.CellWidth(), dy = spec.y.CellWidth();

  // Independent region map: outcome by strip and frontier.
  int cell_mismatch = 0;
  for (const RegionCell& cell : grid.cells) {
    const double x = cell.x_value, y = cell.y_value;
    bool coop;
    int route;
    if (x < 0.25) {
      coop = y <= 0.25;
      route = 2;
    } else if (x < 0.5) {
      coop = y <= x;
      route = coop ? 1 : 2;
    } else {
      coop = y <= 0.5;
      route = 1;
    }
    const auto want_kind =
        coop ? InteractionKind::kCooperation : InteractionKind::kCompetition;
    if (cell.kinds != std::vector{want_kind} ||
        cell.routes != std::vector{route}) {
      ++cell_mismatch;
    }
    for (const auto& eq : SolveTwoRoute(ConfigAt(spec, x, y))) {
      ledger.Check(eq, ConfigAt(spec, x, y), std::nullopt);
    }
  }

  std::vector<double> verticals;
  std::set<std::string> frontiers;
  int off_curve = 0;
  for (const Boundary& b : grid.boundaries) {
    if (b.source != "empirical") continue;
    if (b.label == kHalfLineLabel || b.label == kFullLineLabel) {
      verticals.push_back(b.points.front()[0]);
      continue;
    }
    frontiers.insert(b.label);
    for (const auto& p : b.points) {
      const double want = p[0] < 0.25 ? 0.25 : p[0] < 0.5 ? p[0] : 0.5;
      if (std::abs(p[1] - want) > dy) ++off_curve;
    }
  }
  const bool vertical_ok = verticals.size() == 2 &&
                           std::abs(verticals[0] - 0.25) <= dx &&
                           std::abs(verticals[1] - 0.5) <= dx;
  const bool frontier_ok =
      frontiers == std::set<std::string>{FrontierLabel(1), FrontierLabel(3),
                                         FrontierLabel(4)} &&
      off_curve == 0;
  const BoundaryAgreement agreement = CompareBoundaries(grid, spec);

  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / "stackelroute_acceptance_a.csv";
  const auto b = dir / "stackelroute_acceptance_b.csv";
  ExportRegions(grid, spec, ExportFormat::kCsv, a);
  ExportRegions(Sweep(spec, 1), spec, ExportFormat::kCsv, b);
  const bool stable = ReadFile(a) == ReadFile(b) && !ReadFile(a).empty();
  std::filesystem::remove(a);
  std::filesystem::remove(b);

  std::ostringstream d;
  d << "cell mismatches " << cell_mismatch << ", verticals "
    << verticals.size() << (vertical_ok ? " ok" : " BAD") << ", frontiers "
    << frontiers.size() << (frontier_ok ? " ok" : " BAD")
    << ", max error (cells) vertical "
    << FormatNumber(agreement.max_vertical_error) << " frontier "
    << FormatNumber(agreement.max_frontier_error) << ", csv "
    << (stable ? "byte-stable" : "UNSTABLE");
  return {cell_mismatch == 0 && vertical_ok && frontier_ok &&
              agreement.Agrees() && stable,
          d.str()};
}

// ---------------------------------------------------------------------------
// Criterion 5.

// Largest gap for which the one-route game still cooperates, by bisection.
double CooperativeSupremum(RawConfig raw) {
  double lo = 0.0, hi = 10.0;
  const double e1 = raw.territory[0];
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    raw.territory = {e1, e1 - mid};
    const auto eqs = SolveOneRoute(GameConfig::Validate(raw));
    (eqs[0].kind == InteractionKind::kCooperation ? lo : hi) = mid;
  }
  return lo;
}

Outcome CriterionOneRoute() {
  Uniform u(505);
  int match = 0, shrink = 0;
  for (int trial = 0; trial < 500; ++trial) {
    RawConfig raw;
    const double beta2 = u(0.5, 3.0);
    raw.beta = {beta2 * u(1.1, 3.0), beta2};
    const double c_o = u(0.01, 1.0);
    raw.c_o = {c_o, c_o};
    raw.delta = {u(1.0, 3.0)};
    const double e2 = u(0.5, 5.0);
    raw.r = u(0.5, 2.0);
    raw.territory = {e2 + u(0.0, 2.0) * raw.r / raw.delta[0], e2};
    raw.t_o = u(-5.0, 20.0);
    const GameConfig config = GameConfig::Validate(raw);
    const auto eqs = SolveOneRoute(config);
    const bool coop = config.territories().Gap() <= raw.r / (2 * raw.delta[0]);
    const double t1 = coop ? config.t_o() : TippingTime(config);
    const auto kind =
        coop ? InteractionKind::kCooperation : InteractionKind::kCompetition;
    match += eqs.size() == 1 && eqs[0].kind == kind && eqs[0].profile.t1 == t1 &&
             eqs[0].profile.t2 == config.t_o();

    if (trial < 100) {
      RawConfig base = raw;
      base.territory = {10.0, 9.0};
      base.delta = {1.0};
      const double wide = CooperativeSupremum(base);
      base.delta = {u(1.05, 4.0)};
      const double narrow = CooperativeSupremum(base);
      shrink += narrow < wide;
    }
  }
  std::ostringstream d;
  d << "classification " << match << "/500, shrink " << shrink << "/100";
  return {match == 500 && shrink == 100, d.str()};
}

// ---------------------------------------------------------------------------
// Criterion 6.

Outcome CriterionNeutrality() {
  Uniform u(606);
  int ok = 0;
  std::string first;
  for (int trial = 0; trial < 100; ++trial) {
    const double delta1 = u(1.0, 3.0);
    const double lambda = u(1.2, 4.0);
    const double r = u(0.5, 2.0);
    const double full = r / lambda;
    const double c1 = u(0.05, 0.95) * full / (delta1 * delta1);
    const double c2 = (trial % 10 == 0 ? 1.0 : u(1.0, 3.0)) * full /
                      (delta1 * delta1);
    RawConfig raw;
    const double beta2 = u(0.5, 3.0);
    raw.beta = {beta2 * u(1.1, 3.0), beta2};
    raw.c_o = {c1, c2};
    raw.delta = {delta1, delta1 * lambda};
    raw.r = r;
    raw.t_o = u(-5.0, 20.0);
    // Gap above every agent's solo-minus-flock margin.
    double margin = 0;
    for (double c : {c1, c2}) {
      const double solo = std::min(RouteCost(c, delta1, r, RouteMode::kSolo),
                                   RouteCost(c, delta1 * lambda, r, RouteMode::kSolo));
      for (double d : {delta1, delta1 * lambda}) {
        margin = std::max(margin, solo - RouteCost(c, d, r, RouteMode::kFlock));
      }
    }
    const double e2 = u(0.5, 5.0);
    raw.territory = {e2 + margin * u(1.1, 3.0) + u(0.05, 1.0), e2};
    const GameConfig config = GameConfig::Validate(raw);

    const auto eqs = SolveHeterogeneous(config);
    bool good = eqs.size() == 1 && eqs[0].profile.x1.one_based() == 2 &&
                eqs[0].profile.x2.one_based() == 1 &&
                eqs[0].kind == InteractionKind::kNeutralCompetition;
    if (good) {
      const StrategyGrid grid = BuildGrid(config, RelativeStep(config));
      good = VerifySpe(eqs[0].profile, config, grid, Threads()).is_spe;
    }
    ok += good;
    if (!good && first.empty()) {
      first = "trial " + std::to_string(trial) +
              (eqs.empty() ? std::string(": no SPE")
                           : ": " + ProfileText(eqs[0].profile));
    }
  }
  std::ostringstream d;
  d << ok << "/100 NeutralCompetition (x1=2, x2=1) confirmed by grid check";
  if (!first.empty()) d << "; first failure " << first;
  return {ok == 100, d.str()};
}

// ---------------------------------------------------------------------------
// Criterion 7.

Outcome CriterionConvergence() {
  RawConfig raw;
  raw.beta = {2.0, 1.0};
  raw.c_o = {0.6, 0.6};
  raw.delta = {1.0, 2.0};
  raw.territory = {5.0, 3.0};
  raw.r = 1.0;
  raw.t_o = 10.0;
  const GameConfig config = GameConfig::Validate(raw);
  const double tipping = TippingTime(config);
  bool pass = true;
  std::ostringstream d;
  const char* sep = "";
  for (double h : {1e-1, 1e-2, 1e-3}) {
    const double t1 = OracleSolve(config, BuildGrid(config, h), Threads()).profile.t1;
    const double err = std::abs(t1 - tipping);
    pass &= err <= 2 * h;
    d << sep << "h=" << FormatNumber(h) << " |t1-T|=" << FormatNumber(err);
    sep = "; ";
  }
  return {pass, d.str()};
}

// ---------------------------------------------------------------------------
// Criterion 8.

Outcome CriterionSplitRoutes() {
  Uniform u(808);
  int rejected = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t routes = 2 + trial % 3;
    RawConfig raw;
    const double beta2 = u(0.5, 3.0);
    raw.beta = {beta2 * u(1.1, 3.0), beta2};
    const double c_o = u(0.01, 1.0);
    raw.c_o = {c_o, c_o};
    raw.delta = {u(1.0, 3.0)};
    for (std::size_t k = 1; k < routes; ++k) {
      raw.delta.push_back(raw.delta.back() * u(1.2, 3.0));
    }
    const double e2 = u(0.5, 5.0);
    raw.territory = {e2 + u(0.01, 3.0), e2};
    raw.r = u(0.5, 2.0);
    raw.t_o = u(-5.0, 20.0);
    const GameConfig config = GameConfig::Validate(raw);
    const ActionProfile split{config.t_o(), Route::FromOneBased(1), config.t_o(),
                              Route::FromOneBased(2)};
    const StrategyGrid grid = BuildGrid(config, RelativeStep(config));
    const DeviationReport report = VerifySpe(split, config, grid, Threads());
    rejected += !report.is_spe && report.best_deviation.has_value() &&
                report.best_deviation->gain > 0;
  }
  std::ostringstream d;
  d << rejected << "/500 rejected with a profitable deviation";
  return {rejected == 500, d.str()};
}

void Report(int id, const char* title, const Outcome& o, int& failures) {
  std::printf("[%s] criterion %d: %s: %s\n", o.pass ? "PASS" : "FAIL", id, title,
              o.detail.c_str());
  std::fflush(stdout);
  failures += !o.pass;
}

}  // namespace
}  // namespace stackelroute

int main() {
  using namespace stackelroute;
  int failures = 0;
  InvariantLedger ledger;
  Report(1, "case table and oracle agreement", CriterionTable(ledger), failures);
  Report(2, "tipping-time indifference", CriterionIndifference(ledger), failures);
  Report(3, "region diagram", CriterionRegionDiagram(ledger), failures);
  const Outcome props{ledger.violations == 0,
                      std::to_string(ledger.violations) + " violations over " +
                          std::to_string(ledger.checked) + " equilibria" +
                          (ledger.first.empty() ? "" : "; first: " + ledger.first)};
  Report(4, "structural invariants", props, failures);
  Report(5, "one-route reduction", CriterionOneRoute(), failures);
  Report(6, "neutrality", CriterionNeutrality(), failures);
  Report(7, "oracle convergence", CriterionConvergence(), failures);
  Report(8, "same time, different routes", CriterionSplitRoutes(), failures);
  std::printf("%d of 8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}
