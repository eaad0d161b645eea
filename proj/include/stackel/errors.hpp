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

#ifndef STACKEL_ERRORS_HPP_
#define STACKEL_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace stackel {

// Malformed or inconsistent input: bad dimensions, invalid strategies,
// unknown set ids, non-matchings. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A brute-force or enumeration routine was asked to go beyond its cap.
// The CLI maps this to exit code 3.
class LimitError : public std::length_error {
 public:
  explicit LimitError(const std::string& what) : std::length_error(what) {}
};

// Something that should not happen for valid input (an LP that must be
// feasible came back infeasible, a self-check failed).
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stackel

#endif  // STACKEL_ERRORS_HPP_
