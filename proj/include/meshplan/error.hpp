// Copyright 2026 The meshplan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace meshplan {

enum class ErrorCode {
  kIo,
  kSyntax,
  kSchema,
  kRange,
  kInvalidArgument,
  kInfeasible,
  kDisconnected,
  kLoadInfeasible,
  kTooLarge,
  kNotATree,
  kFormat,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised by node selection and the exhaustive oracle. `cells` carries the
// uncovered interest cells for kInfeasible, `sites` the unreachable sites
// for kDisconnected.
class PlanningError : public Error {
 public:
  PlanningError(ErrorCode code, const std::string& what,
                std::vector<int> cells, std::vector<std::string> sites)
      : Error(code, what), cells_(std::move(cells)), sites_(std::move(sites)) {}

  const std::vector<int>& cells() const { return cells_; }
  const std::vector<std::string>& sites() const { return sites_; }

 private:
  std::vector<int> cells_;
  std::vector<std::string> sites_;
};

}  // namespace meshplan
