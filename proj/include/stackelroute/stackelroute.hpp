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

#ifndef STACKELROUTE_STACKELROUTE_HPP_
#define STACKELROUTE_STACKELROUTE_HPP_

#include "stackelroute/analytic.hpp"
#include "stackelroute/config_json.hpp"
#include "stackelroute/error.hpp"
#include "stackelroute/format.hpp"
#include "stackelroute/game.hpp"
#include "stackelroute/oracle.hpp"
#include "stackelroute/sweep.hpp"

#endif  // STACKELROUTE_STACKELROUTE_HPP_
