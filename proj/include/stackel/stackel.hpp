// Copyright 2026 The Stackel Authors
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

// Umbrella header for the solver library (JSON I/O excluded; include
// stackel/io.hpp separately).

#ifndef STACKEL_STACKEL_HPP_
#define STACKEL_STACKEL_HPP_

#include "stackel/discretize.hpp"
#include "stackel/errors.hpp"
#include "stackel/game.hpp"
#include "stackel/incentive.hpp"
#include "stackel/lp.hpp"
#include "stackel/matching.hpp"
#include "stackel/perm_matching.hpp"
#include "stackel/random.hpp"
#include "stackel/reduction.hpp"

#define STACKEL_VERSION "0.1.0"

#endif  // STACKEL_STACKEL_HPP_
