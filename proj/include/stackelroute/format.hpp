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

// Structured output. Every number leaves the library with 9 significant
// digits so text and JSON are stable across platforms.

#ifndef STACKELROUTE_FORMAT_HPP_
#define STACKELROUTE_FORMAT_HPP_

#include <cstdio>
#include <cstdlib>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "stackelroute/analytic.hpp"
#include "stackelroute/game.hpp"

namespace stackelroute {

inline std::string FormatNumber(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

// The double nearest to the 9-significant-digit rendering of v, so JSON
// serialization prints at most 9 digits.
inline double Round9(double v) {
  return std::strtod(FormatNumber(v).c_str(), nullptr);
}

inline nlohmann::json EquilibriumToJson(const Equilibrium& eq,
                                        const GameConfig& config) {
  const Utilities u = EvaluateUtility(eq.profile, config);
  nlohmann::json j;
  j["profile"] = {{"t1", Round9(eq.profile.t1)},
                  {"x1", eq.profile.x1.one_based()},
                  {"t2", Round9(eq.profile.t2)},
                  {"x2", eq.profile.x2.one_based()}};
  j["kind"] = std::string(KindName(eq.kind));
  j["case"] = std::string(CaseTagName(eq.case_tag));
  j["tipping_time"] = eq.tipping_time ? nlohmann::json(Round9(*eq.tipping_time))
                                      : nlohmann::json(nullptr);
  j["utilities"] = {Round9(u[0]), Round9(u[1])};
  if (!eq.note.empty()) j["note"] = eq.note;
  return j;
}

inline nlohmann::json EquilibriaToJson(std::span<const Equilibrium> eqs,
                                       const GameConfig& config) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& eq : eqs) arr.push_back(EquilibriumToJson(eq, config));
  return arr;
}

inline std::string ProfileText(const ActionProfile& p) {
  return "t1=" + FormatNumber(p.t1) + " x1=" + std::to_string(p.x1.one_based()) +
         " t2=" + FormatNumber(p.t2) + " x2=" + std::to_string(p.x2.one_based());
}

inline std::string EquilibriumText(const Equilibrium& eq,
                                   const GameConfig& config) {
  const Utilities u = EvaluateUtility(eq.profile, config);
  std::string out = ProfileText(eq.profile) +
                    " kind=" + std::string(KindName(eq.kind)) +
                    " case=" + std::string(CaseTagName(eq.case_tag)) +
                    " tipping_time=" +
                    (eq.tipping_time ? FormatNumber(*eq.tipping_time) : "none") +
                    " u1=" + FormatNumber(u[0]) + " u2=" + FormatNumber(u[1]);
  if (!eq.note.empty()) out += " note=\"" + eq.note + "\"";
  return out;
}

}  // namespace stackelroute

#endif  // STACKELROUTE_FORMAT_HPP_
