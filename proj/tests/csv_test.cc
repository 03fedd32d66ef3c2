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
#include "anonforge/csv.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "anonforge/error.h"

namespace anonforge::csv {
namespace {

std::vector<Row> ReadText(const std::string& text) {
  std::istringstream in(text);
  return Read(in);
}

TEST(CsvRead, QuotedFieldsAndEscapedQuotes) {
  const auto rows = ReadText("a,b\n\"x, y\",\"say \"\"hi\"\"\"\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][0], "x, y");
  EXPECT_EQ(rows[1][1], "say \"hi\"");
}

TEST(CsvRead, CrlfBomAndBlankLines) {
  const auto rows = ReadText("\xEF\xBB\xBF" "a,b\r\n1,2\r\n\r\n3,4");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0][0], "a");
  EXPECT_EQ(rows[2][1], "4");
}

TEST(CsvRead, EmbeddedNewlineInQuotes) {
  const auto rows = ReadText("a\n\"line1\nline2\"\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][0], "line1\nline2");
}

TEST(CsvRead, TrailingEmptyCellKept) {
  const auto rows = ReadText("a,b\n1,\n");
  ASSERT_EQ(rows[1].size(), 2u);
  EXPECT_EQ(rows[1][1], "");
}

TEST(CsvRead, UnterminatedQuoteIsParseError) {
  EXPECT_THROW(ReadText("a\n\"open\n"), ParseError);
}

TEST(CsvWrite, EscapesOnlyWhenNeeded) {
  EXPECT_EQ(Escape("plain"), "plain");
  EXPECT_EQ(Escape("a,b"), "\"a,b\"");
  EXPECT_EQ(Escape("q\"q"), "\"q\"\"q\"");
  std::ostringstream out;
  const std::vector<std::string> cells = {"1", "x,y", ""};
  WriteRow(out, cells);
  EXPECT_EQ(out.str(), "1,\"x,y\",\n");
}

TEST(CsvWrite, RoundTripsThroughRead) {
  std::mt19937 rng(5);
  const std::string alphabet = "ab,\"\n x";
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> cells(1 + rng() % 4);
    for (auto& c : cells) {
      const int len = 1 + static_cast<int>(rng() % 6);
      for (int i = 0; i < len; ++i) c.push_back(alphabet[rng() % alphabet.size()]);
    }
    std::ostringstream out;
    WriteRow(out, cells);
    const auto rows = ReadText(out.str());
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0], cells);
  }
}

TEST(CsvNumber, ShortestRoundTrip) {
  EXPECT_EQ(FormatNumber(0.0), "0");
  EXPECT_EQ(FormatNumber(-0.0), "0");
  EXPECT_EQ(FormatNumber(37.0), "37");
  EXPECT_EQ(FormatNumber(0.1), "0.1");
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> dist(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = dist(rng);
    EXPECT_EQ(*ParseNumber(FormatNumber(v)), v);
  }
}

TEST(CsvNumber, RejectsNonFiniteAndJunk) {
  EXPECT_FALSE(ParseNumber("inf"));
  EXPECT_FALSE(ParseNumber("nan"));
  EXPECT_FALSE(ParseNumber("12abc"));
  EXPECT_FALSE(ParseNumber(""));
  EXPECT_EQ(*ParseNumber("-4.5"), -4.5);
  EXPECT_EQ(*ParseNumber("1e3"), 1000.0);
}

TEST(CsvTrim, StripsSpacesAndTabs) {
  EXPECT_EQ(Trim("  x \t"), "x");
  EXPECT_EQ(Trim(""), "");
}

}  // namespace
}  // namespace anonforge::csv
