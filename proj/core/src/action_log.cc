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
#include <istream>
#include <ostream>
#include <string>

#include "anonforge/error.h"
#include "anonforge/session.h"
#include "json.hpp"

namespace anonforge {

using nlohmann::ordered_json;

std::string ActionToJson(const Action& action) {
  ordered_json doc;
  doc["seq"] = action.sequence;
  switch (action.kind) {
    case Action::Kind::kChoice:
      doc["type"] = "choice";
      doc["record"] = action.record;
      break;
    case Action::Kind::kSetWeights: {
      doc["type"] = "set_weights";
      ordered_json sliders = ordered_json::object();
      for (const auto& [name, value] : action.sliders) sliders[name] = value;
      doc["sliders"] = std::move(sliders);
      break;
    }
    case Action::Kind::kAutopilot:
      doc["type"] = "autopilot";
      break;
  }
  return doc.dump();
}

Action ActionFromJson(std::string_view line) {
  try {
    const auto doc = ordered_json::parse(line);
    Action action;
    action.sequence = doc.at("seq").get<std::size_t>();
    const auto type = doc.at("type").get<std::string>();
    if (type == "choice") {
      action.kind = Action::Kind::kChoice;
      action.record = doc.at("record").get<std::size_t>();
    } else if (type == "set_weights") {
      action.kind = Action::Kind::kSetWeights;
      const auto& sliders = doc.at("sliders");
      if (!sliders.is_object()) throw BadRequestError("sliders must be an object");
      for (auto it = sliders.begin(); it != sliders.end(); ++it) {
        action.sliders.emplace_back(it.key(), it.value().get<double>());
      }
    } else if (type == "autopilot") {
      action.kind = Action::Kind::kAutopilot;
    } else {
      throw BadRequestError("unknown action type '" + type + "'");
    }
    return action;
  } catch (const ordered_json::exception& e) {
    throw BadRequestError(std::string("malformed action: ") + e.what());
  }
}

void WriteActionLog(std::ostream& out, std::span<const Action> actions) {
  for (const auto& action : actions) out << ActionToJson(action) << '\n';
}

std::vector<Action> ReadActionLog(std::istream& in) {
  std::vector<Action> actions;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      actions.push_back(ActionFromJson(line));
    } catch (const Error& e) {
      throw ReplayError(actions.size(), "log line " + std::to_string(number) + ": " +
                                            e.what());
    }
  }
  return actions;
}

}  // namespace anonforge
