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
#include "anonforge/service/workspace.h"

#include <fstream>
#include <sstream>

#include "anonforge/error.h"
#include "anonforge/pipeline.h"
#include "json.hpp"

namespace anonforge::service {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

void WriteFile(const fs::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.flush();
  if (!out) throw IoError("cannot write " + path.string());
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void RequireId(const std::string& id, std::string_view what) {
  if (!IsValidId(id)) throw NotFoundError("unknown " + std::string(what) + " '" + id + "'");
}

}  // namespace

bool IsValidId(std::string_view id) {
  if (id.empty() || id.size() > 64) return false;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '_';
    if (!ok) return false;
  }
  return true;
}

std::string SessionManifest::ToJson() const {
  ordered_json doc;
  doc["id"] = id;
  doc["dataset"] = dataset;
  doc["hierarchies"] = hierarchies;
  doc["k"] = config.k;
  doc["m"] = config.m;
  doc["update"] = {{"eta", config.update.eta},
                   {"epsilon", config.update.epsilon},
                   {"floor", config.update.floor}};
  doc["initial_weights"] = ordered_json::parse(initial_weights.ToJson());
  // Relative to the session directory, for offline replay.
  doc["dataset_csv"] = "../../datasets/" + dataset + "/data.csv";
  doc["dataset_schema"] = "../../datasets/" + dataset + "/schema.json";
  doc["hierarchies_dir"] = "../../hierarchies/" + hierarchies;
  return doc.dump(2);
}

SessionManifest SessionManifest::FromJson(std::string_view json) {
  try {
    const auto doc = ordered_json::parse(json);
    SessionManifest m;
    m.id = doc.at("id").get<std::string>();
    m.dataset = doc.at("dataset").get<std::string>();
    m.hierarchies = doc.at("hierarchies").get<std::string>();
    m.config.k = doc.at("k").get<std::size_t>();
    m.config.m = doc.at("m").get<std::size_t>();
    if (doc.contains("update")) {
      const auto& u = doc["update"];
      m.config.update.eta = u.value("eta", m.config.update.eta);
      m.config.update.epsilon = u.value("epsilon", m.config.update.epsilon);
      m.config.update.floor = u.value("floor", m.config.update.floor);
    }
    m.initial_weights = WeightVector::FromJson(doc.at("initial_weights").dump());
    return m;
  } catch (const ordered_json::exception& e) {
    throw ConfigError(std::string("malformed session manifest: ") + e.what());
  }
}

Workspace::Workspace(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  for (const char* sub : {"datasets", "hierarchies", "sessions", "sweeps", "jobs"}) {
    fs::create_directories(root_ / sub, ec);
    if (ec) throw IoError("cannot create " + (root_ / sub).string() + ": " + ec.message());
  }
}

std::string Workspace::NewId(std::string_view prefix) {
  std::string id = NewSessionId();
  return std::string(prefix) + id.substr(id.find('-') + 1);
}

fs::path Workspace::DatasetDir(const std::string& id) const { return root_ / "datasets" / id; }
fs::path Workspace::HierarchyDir(const std::string& id) const {
  return root_ / "hierarchies" / id;
}
fs::path Workspace::SessionDir(const std::string& id) const { return root_ / "sessions" / id; }
fs::path Workspace::SweepDir(const std::string& id) const { return root_ / "sweeps" / id; }
fs::path Workspace::JobFile(const std::string& id) const {
  return root_ / "jobs" / (id + ".json");
}

std::string Workspace::AddDataset(std::string_view csv_text, const std::optional<Schema>& schema,
                                  bool adult_preprocess, bool complete_only) {
  const std::string id = NewId("d-");
  const fs::path dir = DatasetDir(id);
  fs::create_directories(dir);
  try {
    WriteFile(dir / "upload.csv", csv_text);
    DataSource source;
    source.csv = dir / "upload.csv";
    source.adult_preprocess = adult_preprocess;
    source.complete_only = complete_only;
    if (schema) {
      WriteFile(dir / "upload-schema.json", schema->ToJson());
      source.schema = dir / "upload-schema.json";
    }
    auto dataset = std::make_shared<const Dataset>(LoadDataSource(source));
    std::ostringstream out;
    dataset->WriteCsv(out);
    WriteFile(dir / "data.csv", out.str());
    WriteFile(dir / "schema.json", dataset->schema().ToJson());
    fs::remove(dir / "upload.csv");
    fs::remove(dir / "upload-schema.json");
    std::lock_guard lock(mutex_);
    datasets_.emplace(id, std::move(dataset));
  } catch (...) {
    std::error_code ec;
    fs::remove_all(dir, ec);
    throw;
  }
  return id;
}

std::shared_ptr<const Dataset> Workspace::GetDataset(const std::string& id) {
  RequireId(id, "dataset");
  {
    std::lock_guard lock(mutex_);
    if (auto it = datasets_.find(id); it != datasets_.end()) return it->second;
  }
  const fs::path dir = DatasetDir(id);
  if (!fs::exists(dir / "data.csv")) throw NotFoundError("unknown dataset '" + id + "'");
  auto dataset = std::make_shared<const Dataset>(
      LoadCsvFile(dir / "data.csv", Schema::Load(dir / "schema.json"), false));
  std::lock_guard lock(mutex_);
  return datasets_.emplace(id, std::move(dataset)).first->second;
}

std::string Workspace::AddHierarchies(const std::map<std::string, std::string>& trees) {
  if (trees.empty()) throw BadRequestError("no hierarchies in upload");
  HierarchySet set;
  for (const auto& [attribute, text] : trees) {
    if (!IsValidId(attribute)) {
      throw HierarchyError("attribute name '" + attribute + "' cannot be stored");
    }
    set.emplace(attribute, Hierarchy::Parse(text, attribute));
  }
  const std::string id = NewId("h-");
  const fs::path dir = HierarchyDir(id);
  fs::create_directories(dir);
  for (const auto& [attribute, tree] : set) {
    WriteFile(dir / (attribute + ".json"), tree.ToJson());
  }
  std::lock_guard lock(mutex_);
  hierarchies_.emplace(id, std::make_shared<const HierarchySet>(std::move(set)));
  return id;
}

std::shared_ptr<const HierarchySet> Workspace::GetHierarchies(const std::string& id) {
  RequireId(id, "hierarchy set");
  {
    std::lock_guard lock(mutex_);
    if (auto it = hierarchies_.find(id); it != hierarchies_.end()) return it->second;
  }
  const fs::path dir = HierarchyDir(id);
  if (!fs::is_directory(dir)) throw NotFoundError("unknown hierarchy set '" + id + "'");
  auto set = std::make_shared<const HierarchySet>(LoadHierarchyDir(dir));
  std::lock_guard lock(mutex_);
  return hierarchies_.emplace(id, std::move(set)).first->second;
}

void Workspace::SaveSession(const SessionManifest& manifest) {
  const fs::path dir = SessionDir(manifest.id);
  fs::create_directories(dir);
  WriteFile(dir / "session.json", manifest.ToJson());
  WriteFile(dir / "log.jsonl", "");
}

std::optional<SessionManifest> Workspace::LoadSessionManifest(const std::string& id) const {
  if (!IsValidId(id)) return std::nullopt;
  const fs::path file = SessionDir(id) / "session.json";
  if (!fs::exists(file)) return std::nullopt;
  return SessionManifest::FromJson(ReadFile(file));
}

void Workspace::AppendAction(const std::string& session_id, const Action& action) {
  const fs::path file = SessionDir(session_id) / "log.jsonl";
  std::ofstream out(file, std::ios::binary | std::ios::app);
  out << ActionToJson(action) << '\n';
  out.flush();
  if (!out) throw IoError("cannot append to " + file.string());
}

std::vector<Action> Workspace::LoadActions(const std::string& session_id) const {
  std::ifstream in(SessionDir(session_id) / "log.jsonl", std::ios::binary);
  if (!in) return {};
  return ReadActionLog(in);
}

}  // namespace anonforge::service
