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

#include "meshplan/error.hpp"

namespace meshplan {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kSyntax: return "SyntaxError";
    case ErrorCode::kSchema: return "SchemaError";
    case ErrorCode::kRange: return "RangeError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kDisconnected: return "Disconnected";
    case ErrorCode::kLoadInfeasible: return "LoadInfeasible";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kNotATree: return "NotATree";
    case ErrorCode::kFormat: return "FormatError";
  }
  return "Unknown";
}

}  // namespace meshplan
