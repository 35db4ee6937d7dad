// Copyright 2026 The esd-lab Authors
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

#include <gtest/gtest.h>

#include "state_io.hpp"
#include "support/random_states.hpp"

namespace esdlab::cli {
namespace {

using esdlab::testing::Rng;

double max_abs_diff(const Mat4& x, const Mat4& y) { return (x - y).cwiseAbs().maxCoeff(); }

TEST(StateIo, ParsesXStateForm) {
  const LoadedState s = parse_state_text(R"({"x_state": {"a": 0.5, "b": 0, "c": 0, "d": 0.5,
      "w": {"re": 0.5, "im": 0}, "z": {"re": 0, "im": 0}}})");
  ASSERT_TRUE(s.x.has_value());
  EXPECT_EQ(*s.x, bell_state(BellState::PhiPlus));
  EXPECT_EQ(s.rho(0, 3), Complex(0.5, 0.0));
}

TEST(StateIo, ParsesMatrixForm) {
  std::string text = R"({"matrix": [)";
  for (int i = 0; i < 4; ++i) {
    text += "[";
    for (int j = 0; j < 4; ++j) {
      text += i == j ? R"({"re": 0.25, "im": 0})" : R"({"re": 0, "im": 0})";
      if (j < 3) text += ",";
    }
    text += i < 3 ? "]," : "]";
  }
  text += "]}";
  const LoadedState s = parse_state_text(text);
  EXPECT_FALSE(s.x.has_value());
  EXPECT_EQ(max_abs_diff(s.rho.matrix(), DensityMatrix::maximally_mixed().matrix()), 0.0);
}

TEST(StateIo, XStateRoundTripIsExact) {
  Rng rng(51);
  for (int trial = 0; trial < 200; ++trial) {
    const XState x = esdlab::testing::random_x_state(rng);
    const LoadedState back = parse_state_text(dump_state(to_json(x)));
    ASSERT_TRUE(back.x.has_value());
    EXPECT_EQ(*back.x, x);
  }
}

TEST(StateIo, MatrixRoundTripIsExact) {
  Rng rng(52);
  for (int trial = 0; trial < 200; ++trial) {
    const DensityMatrix rho = esdlab::testing::random_density(rng);
    const LoadedState back = parse_state_text(dump_state(to_json(rho)));
    EXPECT_EQ(max_abs_diff(back.rho.matrix(), rho.matrix()), 0.0);
  }
}

TEST(StateIo, RealPartIsWrittenBeforeImaginary) {
  const std::string text = dump_state(to_json(bell_state(BellState::PhiPlus)));
  EXPECT_LT(text.find("\"re\""), text.find("\"im\""));
  EXPECT_EQ(text.back(), '\n');
}

TEST(StateIo, RejectsMalformedDocuments) {
  EXPECT_THROW(parse_state_text("{"), StateFileError);
  EXPECT_THROW(parse_state_text("[]"), StateFileError);
  EXPECT_THROW(parse_state_text("{}"), StateFileError);
  EXPECT_THROW(parse_state_text(R"({"x_state": {}, "matrix": []})"), StateFileError);
  EXPECT_THROW(parse_state_text(R"({"matrix": [[1, 2]]})"), StateFileError);
  EXPECT_THROW(parse_state_text(R"({"x_state": {"a": 1, "b": 0, "c": 0, "d": 0,
      "w": {"re": 0}, "z": {"re": 0, "im": 0}}})"),
               StateFileError);
  EXPECT_THROW(parse_state_text(R"({"x_state": {"a": "1", "b": 0, "c": 0, "d": 0,
      "w": {"re": 0, "im": 0}, "z": {"re": 0, "im": 0}}})"),
               StateFileError);
}

TEST(StateIo, NamesThePhysicalDefect) {
  try {
    parse_state_text(R"({"x_state": {"a": 0.25, "b": 0.25, "c": 0.25, "d": 0.25,
        "w": {"re": 0.4, "im": 0}, "z": {"re": 0, "im": 0}}})");
    FAIL() << "expected StateFileError";
  } catch (const StateFileError& e) {
    EXPECT_NE(std::string(e.what()).find("|w|^2 exceeds a*d"), std::string::npos);
  }
  try {
    parse_state_text(R"({"x_state": {"a": 0.3, "b": 0.25, "c": 0.25, "d": 0.25,
        "w": {"re": 0, "im": 0}, "z": {"re": 0, "im": 0}}})");
    FAIL() << "expected StateFileError";
  } catch (const StateFileError& e) {
    EXPECT_NE(std::string(e.what()).find("trace"), std::string::npos) << e.what();
  }
}

TEST(StateIo, MissingFileIsReported) {
  EXPECT_THROW(load_state_file("/nonexistent/esd-lab/state.json"), StateFileError);
}

}  // namespace
}  // namespace esdlab::cli
