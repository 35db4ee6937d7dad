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

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "esdlab/qmat.hpp"

// JSON state files. Two shapes are accepted:
//
//   {"x_state": {"a": .., "b": .., "c": .., "d": ..,
//                "w": {"re": .., "im": ..}, "z": {"re": .., "im": ..}}}
//   {"matrix": [[{"re": .., "im": ..}, x4], x4]}
//
// Matrix rows follow the |++>, |+->, |-+>, |--> ordering.

namespace esdlab::cli {

class StateFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadedState {
  DensityMatrix rho;
  std::optional<XState> x;  // set when the file used the x_state form
};

LoadedState parse_state(const nlohmann::json& doc);
LoadedState parse_state_text(std::string_view text);
LoadedState load_state_file(const std::string& path);

nlohmann::ordered_json to_json(const XState& x);
nlohmann::ordered_json to_json(const DensityMatrix& rho);

/// Pretty-printed document with a trailing newline.
std::string dump_state(const nlohmann::ordered_json& doc);

}  // namespace esdlab::cli
