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
#ifndef ANONFORGE_ERROR_H_
#define ANONFORGE_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace anonforge {

// Machine-readable failure categories. The string form (ErrorCodeName) is
// what the CLI prints on stderr and what the HTTP API returns as error_code.
enum class ErrorCode {
  kSchema,
  kParse,
  kEmptyDataset,
  kRange,
  kHierarchy,
  kCluster,
  kWeight,
  kUpdate,
  kOracle,
  kPhase,
  kReplay,
  kEval,
  kReport,
  kConfig,
  kIo,
  kBusy,
  kNotFound,
  kBadRequest,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string detail = {})
      : std::runtime_error(message), code_(code), detail_(std::move(detail)) {}

  ErrorCode code() const { return code_; }
  std::string_view code_name() const { return ErrorCodeName(code_); }
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

template <ErrorCode kCode>
class TypedError : public Error {
 public:
  explicit TypedError(const std::string& message, std::string detail = {})
      : Error(kCode, message, std::move(detail)) {}
};

using SchemaError = TypedError<ErrorCode::kSchema>;
using EmptyDatasetError = TypedError<ErrorCode::kEmptyDataset>;
using RangeError = TypedError<ErrorCode::kRange>;
using HierarchyError = TypedError<ErrorCode::kHierarchy>;
using ClusterError = TypedError<ErrorCode::kCluster>;
using WeightError = TypedError<ErrorCode::kWeight>;
using UpdateError = TypedError<ErrorCode::kUpdate>;
using OracleError = TypedError<ErrorCode::kOracle>;
using PhaseError = TypedError<ErrorCode::kPhase>;
using EvalError = TypedError<ErrorCode::kEval>;
using ReportError = TypedError<ErrorCode::kReport>;
using ConfigError = TypedError<ErrorCode::kConfig>;
using IoError = TypedError<ErrorCode::kIo>;
using BusyError = TypedError<ErrorCode::kBusy>;
using NotFoundError = TypedError<ErrorCode::kNotFound>;
using BadRequestError = TypedError<ErrorCode::kBadRequest>;

// Unparseable cell. Rows are 1-based data rows (the header is row 0).
class ParseError : public Error {
 public:
  ParseError(std::size_t row, std::string column, const std::string& message);

  std::size_t row() const { return row_; }
  const std::string& column() const { return column_; }

 private:
  std::size_t row_;
  std::string column_;
};

// A recorded action could not be re-applied.
class ReplayError : public Error {
 public:
  ReplayError(std::size_t sequence, const std::string& message);

  std::size_t sequence() const { return sequence_; }

 private:
  std::size_t sequence_;
};

}  // namespace anonforge

#endif  // ANONFORGE_ERROR_H_
