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

#ifndef STACKELROUTE_ERROR_HPP_
#define STACKELROUTE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace stackelroute {

enum class ErrorCode {
  kNonIncreasingDifficulties,
  kBetaOrderViolated,
  kTerritoryOrderViolated,
  kNonPositiveParameter,
  kMalformedConfig,
  kInvalidRouteIndex,
  kNotTwoRoutes,
  kNotOneRoute,
  kHeterogeneousCosts,
  kCostOrderViolated,
  kNonPositiveStep,
  kLeaderActionOffGrid,
  kInvalidRange,
  kIoFailure,
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonIncreasingDifficulties:
      return "NonIncreasingDifficulties";
    case ErrorCode::kBetaOrderViolated:
      return "BetaOrderViolated";
    case ErrorCode::kTerritoryOrderViolated:
      return "TerritoryOrderViolated";
    case ErrorCode::kNonPositiveParameter:
      return "NonPositiveParameter";
    case ErrorCode::kMalformedConfig:
      return "MalformedConfig";
    case ErrorCode::kInvalidRouteIndex:
      return "InvalidRouteIndex";
    case ErrorCode::kNotTwoRoutes:
      return "NotTwoRoutes";
    case ErrorCode::kNotOneRoute:
      return "NotOneRoute";
    case ErrorCode::kHeterogeneousCosts:
      return "HeterogeneousCosts";
    case ErrorCode::kCostOrderViolated:
      return "CostOrderViolated";
    case ErrorCode::kNonPositiveStep:
      return "NonPositiveStep";
    case ErrorCode::kLeaderActionOffGrid:
      return "LeaderActionOffGrid";
    case ErrorCode::kInvalidRange:
      return "InvalidRange";
    case ErrorCode::kIoFailure:
      return "IoFailure";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the codes above so the
// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  bool IsIoFailure() const noexcept { return code_ == ErrorCode::kIoFailure; }

 private:
  ErrorCode code_;
};

}  // namespace stackelroute

#endif  // STACKELROUTE_ERROR_HPP_
