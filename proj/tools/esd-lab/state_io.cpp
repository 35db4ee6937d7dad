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

#include "state_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace esdlab::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

double read_real(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw StateFileError(where + ": missing field '" + key + "'");
  }
  const json& v = obj.at(key);
  if (!v.is_number()) throw StateFileError(where + "." + key + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw StateFileError(where + "." + key + ": value is not finite");
  return x;
}

Complex read_complex(const json& v, const std::string& where) {
  if (!v.is_object()) throw StateFileError(where + ": expected an object {re, im}");
  return {read_real(v, "re", where), read_real(v, "im", where)};
}

ordered_json complex_json(Complex v) { return ordered_json{{"re", v.real()}, {"im", v.imag()}}; }

XState parse_x_state(const json& node) {
  if (!node.is_object()) throw StateFileError("x_state: expected an object");
  if (!node.contains("w") || !node.contains("z")) {
    throw StateFileError("x_state: fields 'w' and 'z' are required");
  }
  const double a = read_real(node, "a", "x_state");
  const double b = read_real(node, "b", "x_state");
  const double c = read_real(node, "c", "x_state");
  const double d = read_real(node, "d", "x_state");
  const Complex w = read_complex(node.at("w"), "x_state.w");
  const Complex z = read_complex(node.at("z"), "x_state.z");
  try {
    return XState(a, b, c, d, w, z);
  } catch (const NonPhysicalError& e) {
    throw StateFileError(e.what());
  }
}

DensityMatrix parse_matrix(const json& node) {
  if (!node.is_array() || node.size() != 4) {
    throw StateFileError("matrix: expected an array of 4 rows");
  }
  Mat4 m;
  for (int i = 0; i < 4; ++i) {
    const json& row = node.at(i);
    if (!row.is_array() || row.size() != 4) {
      throw StateFileError("matrix: row " + std::to_string(i) + " must have 4 entries");
    }
    for (int j = 0; j < 4; ++j) {
      m(i, j) = read_complex(row.at(j), "matrix[" + std::to_string(i) + "][" +
                                            std::to_string(j) + "]");
    }
  }
  try {
    return DensityMatrix(m);
  } catch (const NonPhysicalError& e) {
    throw StateFileError(e.what());
  }
}

}  // namespace

LoadedState parse_state(const json& doc) {
  if (!doc.is_object()) throw StateFileError("state file: top level must be an object");
  const bool has_x = doc.contains("x_state");
  const bool has_m = doc.contains("matrix");
  if (has_x == has_m) {
    throw StateFileError("state file: expected exactly one of 'x_state' or 'matrix'");
  }
  if (has_x) {
    XState x = parse_x_state(doc.at("x_state"));
    return LoadedState{embed(x), x};
  }
  return LoadedState{parse_matrix(doc.at("matrix")), std::nullopt};
}

LoadedState parse_state_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw StateFileError(std::string("state file: malformed JSON: ") + e.what());
  }
  return parse_state(doc);
}

LoadedState load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StateFileError("cannot open state file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state_text(buf.str());
}

nlohmann::ordered_json to_json(const XState& x) {
  return ordered_json{{"x_state",
                       {{"a", x.a()},
                        {"b", x.b()},
                        {"c", x.c()},
                        {"d", x.d()},
                        {"w", complex_json(x.w())},
                        {"z", complex_json(x.z())}}}};
}

nlohmann::ordered_json to_json(const DensityMatrix& rho) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < 4; ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < 4; ++j) row.push_back(complex_json(rho(i, j)));
    rows.push_back(std::move(row));
  }
  return ordered_json{{"matrix", std::move(rows)}};
}

std::string dump_state(const ordered_json& doc) { return doc.dump(2) + "\n"; }

}  // namespace esdlab::cli
