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

// GameConfig <-> JSON. Keys: beta[2], c_o (scalar or [2]), delta[n], E[2],
// r, t_o.

#ifndef STACKELROUTE_CONFIG_JSON_HPP_
#define STACKELROUTE_CONFIG_JSON_HPP_

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "stackelroute/error.hpp"
#include "stackelroute/game.hpp"

namespace stackelroute {

namespace internal {

inline double NumberField(const nlohmann::json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw Error(ErrorCode::kMalformedConfig,
                std::string("missing key '") + key + "'");
  }
  if (!it->is_number()) {
    throw Error(ErrorCode::kMalformedConfig,
                std::string("'") + key + "' must be a number");
  }
  return it->get<double>();
}

inline std::array<double, 2> PairField(const nlohmann::json& j,
                                       const char* key, bool allow_scalar) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw Error(ErrorCode::kMalformedConfig,
                std::string("missing key '") + key + "'");
  }
  if (allow_scalar && it->is_number()) {
    const double v = it->get<double>();
    return {v, v};
  }
  if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() ||
      !(*it)[1].is_number()) {
    throw Error(ErrorCode::kMalformedConfig,
                std::string("'") + key + "' must be an array of 2 numbers");
  }
  return {(*it)[0].get<double>(), (*it)[1].get<double>()};
}

}  // namespace internal

inline RawConfig RawConfigFromJson(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw Error(ErrorCode::kMalformedConfig, "config must be a JSON object");
  }
  RawConfig raw;
  raw.beta = internal::PairField(j, "beta", false);
  raw.c_o = internal::PairField(j, "c_o", true);
  raw.territory = internal::PairField(j, "E", false);
  raw.r = internal::NumberField(j, "r");
  raw.t_o = internal::NumberField(j, "t_o");
  const auto it = j.find("delta");
  if (it == j.end() || !it->is_array() || it->empty()) {
    throw Error(ErrorCode::kMalformedConfig,
                "'delta' must be a non-empty array of numbers");
  }
  for (const auto& d : *it) {
    if (!d.is_number()) {
      throw Error(ErrorCode::kMalformedConfig, "'delta' entries must be numbers");
    }
    raw.delta.push_back(d.get<double>());
  }
  return raw;
}

inline GameConfig ConfigFromJson(const nlohmann::json& j) {
  return GameConfig::Validate(RawConfigFromJson(j));
}

inline nlohmann::json ConfigToJson(const GameConfig& config) {
  const RawConfig raw = config.ToRaw();
  nlohmann::json j;
  j["beta"] = raw.beta;
  if (config.homogeneous()) {
    j["c_o"] = raw.c_o[0];
  } else {
    j["c_o"] = raw.c_o;
  }
  j["delta"] = raw.delta;
  j["E"] = raw.territory;
  j["r"] = raw.r;
  j["t_o"] = raw.t_o;
  return j;
}

// Unreadable files raise kIoFailure; bad JSON or bad values raise a
// validation code.
inline GameConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kMalformedConfig,
                path.string() + ": " + std::string(e.what()));
  }
  return ConfigFromJson(j);
}

}  // namespace stackelroute

#endif  // STACKELROUTE_CONFIG_JSON_HPP_
