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
#ifndef ANONFORGE_SERVICE_WORKSPACE_H_
#define ANONFORGE_SERVICE_WORKSPACE_H_

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "anonforge/dataset.h"
#include "anonforge/hierarchy.h"
#include "anonforge/session.h"

namespace anonforge::service {

// What a session was created from; stored as sessions/<id>/session.json.
struct SessionManifest {
  std::string id;
  std::string dataset;
  std::string hierarchies;
  SessionConfig config;
  WeightVector initial_weights;

  std::string ToJson() const;
  static SessionManifest FromJson(std::string_view json);
};

// File-backed store under a working directory:
//
//   datasets/<id>/data.csv, schema.json
//   hierarchies/<id>/<attribute>.json
//   sessions/<id>/session.json, log.jsonl
//   sweeps/<id>/config.json, results.csv, plots/, run-manifest.json
//   jobs/<id>.json
//
// Loaded datasets and hierarchy sets are cached. Thread-safe.
class Workspace {
 public:
  explicit Workspace(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }

  // Parses and validates the upload, then stores the typed table. Without a
  // schema the Adult layout is assumed (raw or preprocessed, by header).
  std::string AddDataset(std::string_view csv_text, const std::optional<Schema>& schema,
                         bool adult_preprocess, bool complete_only);
  // NotFoundError for unknown ids.
  std::shared_ptr<const Dataset> GetDataset(const std::string& id);
  std::filesystem::path DatasetDir(const std::string& id) const;

  // attribute -> tree JSON text.
  std::string AddHierarchies(const std::map<std::string, std::string>& trees);
  std::shared_ptr<const HierarchySet> GetHierarchies(const std::string& id);
  std::filesystem::path HierarchyDir(const std::string& id) const;

  void SaveSession(const SessionManifest& manifest);
  std::optional<SessionManifest> LoadSessionManifest(const std::string& id) const;
  void AppendAction(const std::string& session_id, const Action& action);
  std::vector<Action> LoadActions(const std::string& session_id) const;
  std::filesystem::path SessionDir(const std::string& id) const;

  std::filesystem::path SweepDir(const std::string& id) const;
  std::filesystem::path JobFile(const std::string& id) const;

  // prefix + 16 hex digits; URL-safe.
  static std::string NewId(std::string_view prefix);

 private:
  std::filesystem::path root_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const Dataset>> datasets_;
  std::map<std::string, std::shared_ptr<const HierarchySet>> hierarchies_;
};

// Ids are path components, so only [A-Za-z0-9_-] is accepted.
bool IsValidId(std::string_view id);

}  // namespace anonforge::service

#endif  // ANONFORGE_SERVICE_WORKSPACE_H_
