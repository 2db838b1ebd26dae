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

// Command-line front end. Exit codes: 0 success, 1 validation or usage
// error, 2 I/O error. Results go to `out`, diagnostics to `err`.

#ifndef STACKELROUTE_TOOLS_CLI_HPP_
#define STACKELROUTE_TOOLS_CLI_HPP_

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "stackelroute/stackelroute.hpp"

namespace stackelroute::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

// Worker count for sweeps and the oracle: hardware concurrency, capped by
// STACKELROUTE_THREADS when set to a positive integer.
inline int ThreadBudget() {
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("STACKELROUTE_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) {
      threads = std::min<int>(threads, static_cast<int>(cap));
    }
  }
  return threads;
}

// Step used when the caller gives none: 1e-3 of the competitive time span.
inline double DefaultStep(const GameConfig& config) {
  const double span =
      std::sqrt(config.territories().Gap() * config.agent2().beta);
  return 1e-3 * std::max(span, 1.0);
}

// Picks the closed form matching the config's shape. Heterogeneous configs
// with more than two routes have none; those return nullopt.
inline std::optional<std::vector<Equilibrium>> SolveAnalytic(
    const GameConfig& config) {
  if (config.num_routes() == 1) return SolveOneRoute(config);
  if (config.homogeneous()) {
    return config.num_routes() == 2 ? SolveTwoRoute(config)
                                    : SolveNRoute(config);
  }
  if (config.num_routes() == 2) return SolveHeterogeneous(config);
  return std::nullopt;
}

inline ActionProfile ParseProfile(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 4) {
    throw Error(ErrorCode::kMalformedConfig,
                "profile must be \"t1,x1,t2,x2\", got \"" + text + "\"");
  }
  try {
    std::size_t used = 0;
    auto number = [&](const std::string& s) {
      const double v = std::stod(s, &used);
      if (used != s.size() && s.find_first_not_of(" ", used) != std::string::npos) {
        throw std::invalid_argument(s);
      }
      return v;
    };
    auto route = [&](const std::string& s) {
      const int k = std::stoi(s, &used);
      if (used != s.size() && s.find_first_not_of(" ", used) != std::string::npos) {
        throw std::invalid_argument(s);
      }
      return Route::FromOneBased(k);
    };
    return ActionProfile{number(parts[0]), route(parts[1]), number(parts[2]),
                         route(parts[3])};
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::kMalformedConfig,
                "profile must be \"t1,x1,t2,x2\", got \"" + text + "\"");
  }
}

inline ActionProfile ProfileFromJson(const nlohmann::json& record) {
  const auto& p = record.at("profile");
  return ActionProfile{p.at("t1").get<double>(),
                       Route::FromOneBased(p.at("x1").get<int>()),
                       p.at("t2").get<double>(),
                       Route::FromOneBased(p.at("x2").get<int>())};
}

inline void ValidateProfile(const ActionProfile& p, const GameConfig& config) {
  config.routes().Difficulty(p.x1);
  config.routes().Difficulty(p.x2);
}

inline nlohmann::json ReplyJson(double t1, Route x1, const BestResponse& reply,
                                const GameConfig& config) {
  const Utilities u = ReplyUtilities(t1, x1, reply, config);
  nlohmann::json j;
  if (const auto* c = std::get_if<Concrete>(&reply)) {
    j["type"] = "Concrete";
    j["t"] = Round9(c->t);
    j["x"] = c->x.one_based();
  } else {
    const auto& p = std::get<PreemptLeftLimit>(reply);
    j["type"] = "PreemptLeftLimit";
    j["t_ref"] = Round9(p.t_ref);
    j["x"] = p.x.one_based();
  }
  j["utilities"] = {Round9(u[0]), Round9(u[1])};
  return j;
}

inline std::string ReplyText(double t1, Route x1, const BestResponse& reply,
                             const GameConfig& config) {
  const Utilities u = ReplyUtilities(t1, x1, reply, config);
  std::string head;
  if (const auto* c = std::get_if<Concrete>(&reply)) {
    head = "Concrete t2=" + FormatNumber(c->t) +
           " x2=" + std::to_string(c->x.one_based());
  } else {
    const auto& p = std::get<PreemptLeftLimit>(reply);
    head = "PreemptLeftLimit t_ref=" + FormatNumber(p.t_ref) +
           " x2=" + std::to_string(p.x.one_based());
  }
  return head + " u1=" + FormatNumber(u[0]) + " u2=" + FormatNumber(u[1]);
}

inline bool Agrees(const Equilibrium& oracle, const Equilibrium& analytic,
                   double step) {
  return oracle.kind == analytic.kind &&
         oracle.profile.x1 == analytic.profile.x1 &&
         oracle.profile.x2 == analytic.profile.x2 &&
         std::abs(oracle.profile.t1 - analytic.profile.t1) <= 2.0 * step;
}

inline nlohmann::json ReportJson(const DeviationReport& report) {
  nlohmann::json j;
  j["is_spe"] = report.is_spe;
  if (report.best_deviation) {
    const Deviation& d = *report.best_deviation;
    j["deviation"] = {{"agent", d.agent == Agent::kOne ? 1 : 2},
                      {"t", Round9(d.t)},
                      {"x", d.x.one_based()},
                      {"gain", Round9(d.gain)}};
  } else {
    j["deviation"] = nullptr;
  }
  return j;
}

inline std::string ReportText(const DeviationReport& report) {
  if (report.is_spe) return "is_spe=true";
  const Deviation& d = *report.best_deviation;
  return "is_spe=false deviation: agent=" +
         std::string(d.agent == Agent::kOne ? "1" : "2") +
         " t=" + FormatNumber(d.t) + " x=" + std::to_string(d.x.one_based()) +
         " gain=" + FormatNumber(d.gain);
}

inline nlohmann::json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedConfig, path + ": " + e.what());
  }
}

inline int Run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Stackelberg timing-and-route game solver", "stackelroute"};
  app.require_subcommand(1);

  std::string config_path;
  std::string format = "text";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "GameConfig JSON file")->required();
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
  };

  CLI::App* solve = app.add_subcommand("solve", "All pure-strategy SPEs");
  add_common(solve);
  add_format(solve);
  std::optional<double> solve_step;
  solve->add_option("--step", solve_step,
                    "Grid step for configs without a closed form");

  CLI::App* br = app.add_subcommand("br", "Agent 2 best response");
  add_common(br);
  add_format(br);
  double br_t1 = 0.0;
  int br_x1 = 1;
  br->add_option("--t1", br_t1, "Leader arrival time")->required();
  br->add_option("--x1", br_x1, "Leader route (1-based)")->required();

  CLI::App* oracle = app.add_subcommand("oracle", "Grid backward induction");
  add_common(oracle);
  add_format(oracle);
  double oracle_step = 0.0;
  std::string candidates_path;
  oracle->add_option("--step", oracle_step, "Grid step h")->required();
  oracle->add_option("--candidates", candidates_path,
                     "JSON equilibrium records (solve --format json) to verify");

  CLI::App* sweep = app.add_subcommand("sweep", "Region diagram");
  add_common(sweep);
  double x_min = 0, x_max = 0, y_min = 0, y_max = 0;
  int resolution = 0;
  std::string out_path;
  std::string sweep_format;
  sweep->add_option("--x-min", x_min, "Lowest c_o*delta1^2")->required();
  sweep->add_option("--x-max", x_max, "Highest c_o*delta1^2")->required();
  sweep->add_option("--y-min", y_min, "Lowest E1-E2")->required();
  sweep->add_option("--y-max", y_max, "Highest E1-E2")->required();
  sweep->add_option("--resolution", resolution, "Cells per axis")->required();
  sweep->add_option("--out", out_path, "Output file")->required();
  sweep->add_option("--format", sweep_format,
                    "csv or json (default: from the file extension)")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI::App* utility = app.add_subcommand("utility", "Evaluate (u1, u2)");
  add_common(utility);
  add_format(utility);
  std::string profile_text;
  utility->add_option("--profile", profile_text, "\"t1,x1,t2,x2\"")->required();

  std::vector<const char*> argv;
  argv.push_back("stackelroute");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  const bool json = format == "json";

  try {
    const GameConfig config = LoadConfig(config_path);

    if (solve->parsed()) {
      std::vector<Equilibrium> eqs;
      if (auto analytic = SolveAnalytic(config)) {
        eqs = std::move(*analytic);
      } else {
        const double h = solve_step.value_or(DefaultStep(config));
        err << "warning: heterogeneous costs with " << config.num_routes()
            << " routes have no closed form; using the grid oracle with h="
            << FormatNumber(h) << "\n";
        eqs.push_back(OracleSolve(config, BuildGrid(config, h), ThreadBudget()));
      }
      if (json) {
        out << EquilibriaToJson(eqs, config).dump(2) << "\n";
      } else {
        for (const auto& eq : eqs) out << EquilibriumText(eq, config) << "\n";
      }
      return kExitOk;
    }

    if (br->parsed()) {
      const Route x1 = Route::FromOneBased(br_x1);
      const BestResponse reply = BestResponseAgent2(br_t1, x1, config);
      if (json) {
        out << ReplyJson(br_t1, x1, reply, config).dump(2) << "\n";
      } else {
        out << ReplyText(br_t1, x1, reply, config) << "\n";
      }
      return kExitOk;
    }

    if (oracle->parsed()) {
      const StrategyGrid grid = BuildGrid(config, oracle_step);
      const int threads = ThreadBudget();
      const Equilibrium found = OracleSolve(config, grid, threads);
      const auto analytic = SolveAnalytic(config);
      bool agree = false;
      if (analytic) {
        for (const auto& eq : *analytic) agree |= Agrees(found, eq, grid.step);
      } else {
        err << "warning: no closed form for this config; reporting the "
               "oracle result only\n";
      }
      const DeviationReport self = VerifySpe(found.profile, config, grid, threads);

      std::vector<std::pair<ActionProfile, DeviationReport>> checked;
      if (!candidates_path.empty()) {
        nlohmann::json records = ReadJsonFile(candidates_path);
        if (!records.is_array()) records = nlohmann::json::array({records});
        for (const auto& rec : records) {
          ActionProfile p;
          try {
            p = ProfileFromJson(rec);
          } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::kMalformedConfig,
                        std::string("bad equilibrium record: ") + e.what());
          }
          ValidateProfile(p, config);
          checked.emplace_back(p, VerifySpe(p, config, grid, threads));
        }
      }

      if (json) {
        nlohmann::json j;
        j["step"] = Round9(grid.step);
        j["oracle"] = EquilibriumToJson(found, config);
        j["oracle_verify"] = ReportJson(self);
        j["analytic"] = analytic ? EquilibriaToJson(*analytic, config)
                                 : nlohmann::json(nullptr);
        j["agreement"] = analytic ? nlohmann::json(agree) : nlohmann::json(nullptr);
        nlohmann::json cands = nlohmann::json::array();
        for (const auto& [p, report] : checked) {
          nlohmann::json c = ReportJson(report);
          c["profile"] = {{"t1", Round9(p.t1)},
                          {"x1", p.x1.one_based()},
                          {"t2", Round9(p.t2)},
                          {"x2", p.x2.one_based()}};
          cands.push_back(c);
        }
        j["candidates"] = cands;
        out << j.dump(2) << "\n";
      } else {
        out << "step: h=" << FormatNumber(grid.step) << "\n";
        out << "oracle: " << EquilibriumText(found, config) << "\n";
        out << "oracle verify: " << ReportText(self) << "\n";
        if (analytic) {
          for (const auto& eq : *analytic) {
            out << "analytic: " << EquilibriumText(eq, config) << "\n";
          }
          out << "agreement: " << (agree ? "yes" : "no")
              << " (kind, routes, |t1 diff| <= 2h)\n";
        }
        for (const auto& [p, report] : checked) {
          out << "candidate " << ProfileText(p) << ": " << ReportText(report)
              << "\n";
        }
      }
      return kExitOk;
    }

    if (sweep->parsed()) {
      SweepSpec spec{config, AxisRange{x_min, x_max, resolution},
                     AxisRange{y_min, y_max, resolution}};
      ExportFormat fmt = ExportFormat::kCsv;
      if (sweep_format == "json" ||
          (sweep_format.empty() && out_path.size() >= 5 &&
           out_path.compare(out_path.size() - 5, 5, ".json") == 0)) {
        fmt = ExportFormat::kJson;
      }
      const RegionGrid grid = Sweep(spec, ThreadBudget());
      ExportRegions(grid, spec, fmt, out_path);
      const BoundaryAgreement agreement = CompareBoundaries(grid, spec);
      out << "cells: " << grid.cells.size() << "\n";
      out << "boundaries: " << grid.boundaries.size() << "\n";
      out << "boundary agreement: " << (agreement.Agrees() ? "yes" : "no")
          << " (vertical " << FormatNumber(agreement.max_vertical_error)
          << " cells, frontier " << FormatNumber(agreement.max_frontier_error)
          << " cells)\n";
      out << "written: " << out_path << "\n";
      return kExitOk;
    }

    if (utility->parsed()) {
      const ActionProfile p = ParseProfile(profile_text);
      ValidateProfile(p, config);
      const Utilities u = EvaluateUtility(p, config);
      if (json) {
        out << nlohmann::json{{"u1", Round9(u[0])}, {"u2", Round9(u[1])}}.dump(2)
            << "\n";
      } else {
        out << "u1=" << FormatNumber(u[0]) << " u2=" << FormatNumber(u[1]) << "\n";
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.IsIoFailure() ? kExitIo : kExitValidation;
  }
  return kExitValidation;
}

}  // namespace stackelroute::cli

#endif  // STACKELROUTE_TOOLS_CLI_HPP_
