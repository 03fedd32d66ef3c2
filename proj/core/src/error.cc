//
// Copyright 2026 The AnonForge Authors
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
//
#include "anonforge/error.h"

namespace anonforge {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSchema: return "schema_error";
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kEmptyDataset: return "empty_dataset";
    case ErrorCode::kRange: return "range_error";
    case ErrorCode::kHierarchy: return "hierarchy_error";
    case ErrorCode::kCluster: return "cluster_error";
    case ErrorCode::kWeight: return "weight_error";
    case ErrorCode::kUpdate: return "update_error";
    case ErrorCode::kOracle: return "oracle_error";
    case ErrorCode::kPhase: return "phase_error";
    case ErrorCode::kReplay: return "replay_error";
    case ErrorCode::kEval: return "eval_error";
    case ErrorCode::kReport: return "report_error";
    case ErrorCode::kConfig: return "config_error";
    case ErrorCode::kIo: return "io_error";
    case ErrorCode::kBusy: return "busy";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kBadRequest: return "bad_request";
  }
  return "unknown_error";
}

ParseError::ParseError(std::size_t row, std::string column,
                       const std::string& message)
    : Error(ErrorCode::kParse, message,
            "row " + std::to_string(row) + ", column " + column),
      row_(row),
      column_(std::move(column)) {}

ReplayError::ReplayError(std::size_t sequence, const std::string& message)
    : Error(ErrorCode::kReplay, message,
            "sequence " + std::to_string(sequence)),
      sequence_(sequence) {}

}  // namespace anonforge
