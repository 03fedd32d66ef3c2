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
#ifndef ANONFORGE_CSV_H_
#define ANONFORGE_CSV_H_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace anonforge::csv {

using Row = std::vector<std::string>;

// Reads an RFC-4180 style document: comma separated, double-quote escaping,
// LF or CRLF line endings, optional UTF-8 byte order mark. Blank lines are
// skipped. Throws ParseError on an unterminated quoted field.
std::vector<Row> Read(std::istream& in);

void WriteRow(std::ostream& out, std::span<const std::string> cells);

// Quotes a cell only when it contains a comma, quote, or line break.
std::string Escape(std::string_view cell);

// Shortest representation that round-trips through strtod.
std::string FormatNumber(double value);

std::optional<double> ParseNumber(std::string_view text);

std::string_view Trim(std::string_view text);

}  // namespace anonforge::csv

#endif  // ANONFORGE_CSV_H_
