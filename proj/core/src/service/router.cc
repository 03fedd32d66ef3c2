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
#include "anonforge/service/router.h"

#include <fstream>
#include <sstream>
#include <vector>

#include "anonforge/error.h"
#include "anonforge/pipeline.h"
#include "anonforge/sangreea.h"
#include "anonforge/service/wire.h"
#include "json.hpp"

namespace anonforge::service {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

ordered_json ParseBody(std::string_view body) {
  try {
    return ordered_json::parse(body.empty() ? std::string_view("{}") : body);
  } catch (const ordered_json::exception& e) {
    throw BadRequestError(std::string("request body is not valid JSON: ") + e.what());
  }
}

HttpResponse Json(int status, std::string body) {
  return {status, "application/json", std::move(body)};
}

std::vector<std::string> SplitPath(std::string_view target) {
  target = target.substr(0, target.find('?'));
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= target.size()) {
    const std::size_t end = std::min(target.find('/', start), target.size());
    if (end > start) parts.emplace_back(target.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

Sliders SlidersFromJson(const ordered_json& obj) {
  if (!obj.is_object()) throw BadRequestError("sliders must be an object");
  Sliders sliders;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!it.value().is_number()) {
      throw BadRequestError("slider '" + it.key() + "' is not a number");
    }
    sliders.emplace_back(it.key(), it.value().get<double>());
  }
  return sliders;
}

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("missing " + path.filename().string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string SessionSummary(const Session& session, const SessionManifest* manifest) {
  ordered_json doc{{"id", session.id()},
                   {"phase", SessionPhaseName(session.phase())},
                   {"k", session.config().k},
                   {"m", session.config().m},
                   {"records", session.dataset().size()},
                   {"quasi_identifiers", session.dataset().schema().QuasiIdentifierNames()},
                   {"weights", ordered_json::parse(session.weights().ToJson())}};
  if (manifest) {
    doc["dataset"] = manifest->dataset;
    doc["hierarchies"] = manifest->hierarchies;
  }
  return doc.dump();
}

}  // namespace

Router::Router(Workspace& workspace, StreamHub& hub, JobPool& jobs)
    : workspace_(workspace), hub_(hub), jobs_(jobs) {}

int Router::StatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound: return 404;
    case ErrorCode::kBusy:
    case ErrorCode::kPhase: return 409;
    case ErrorCode::kBadRequest:
    case ErrorCode::kParse:
    case ErrorCode::kConfig: return 400;
    case ErrorCode::kIo: return 500;
    default: return 422;
  }
}

std::string Router::ErrorFrame(const Error& error) {
  auto doc = ordered_json::parse(ErrorToJson(error));
  doc["type"] = "error";
  return doc.dump();
}

HttpResponse Router::Handle(const HttpRequest& request) {
  try {
    return Dispatch(request);
  } catch (const Error& e) {
    return Json(StatusFor(e.code()), ErrorToJson(e));
  } catch (const ordered_json::exception& e) {
    return Json(400, ErrorToJson(BadRequestError(std::string("malformed request: ") +
                                                 e.what())));
  } catch (const std::exception& e) {
    return Json(500, ordered_json{{"error_code", "internal_error"},
                                  {"message", e.what()},
                                  {"detail", ""}}
                         .dump());
  }
}

HttpResponse Router::Dispatch(const HttpRequest& r) {
  const auto p = SplitPath(r.target);
  const bool get = r.method == "GET";
  const bool post = r.method == "POST";
  auto is = [&](std::initializer_list<std::string_view> shape) {
    if (p.size() != shape.size()) return false;
    std::size_t i = 0;
    for (auto s : shape) {
      if (s != "*" && p[i] != s) return false;
      ++i;
    }
    return true;
  };

  if (is({"health"}) && get) {
    return Json(200, ordered_json{{"status", "ok"}, {"version", kVersion}}.dump());
  }
  if (is({"datasets"}) && post) return PostDataset(r.body);
  if (is({"datasets", "*"}) && get) return GetDataset(p[1]);
  if (is({"hierarchies"}) && post) return PostHierarchies(r.body);
  if (is({"sessions"}) && post) return PostSession(r.body);
  if (is({"sessions", "*"}) && get) return GetSession(p[1]);
  if (is({"sessions", "*", "round"}) && get) return GetRound(p[1]);
  if (is({"sessions", "*", "choice"}) && post) return PostChoice(p[1], r.body);
  if (is({"sessions", "*", "weights"}) && post) return PostWeights(p[1], r.body);
  if (is({"sessions", "*", "autopilot"}) && post) return PostAutopilot(p[1]);
  if (is({"sessions", "*", "metrics"}) && get) return GetMetrics(p[1]);
  if (is({"sessions", "*", "export"}) && get) return GetExport(p[1]);
  if (is({"sessions", "*", "log"}) && get) return GetLog(p[1]);
  if (is({"sweeps"}) && post) return PostSweep(r.body);
  if (is({"jobs", "*"}) && get) return GetJob(p[1]);
  if (is({"sweeps", "*", "results"}) && get) {
    return GetSweepFile(p[1], "results.csv", "text/csv");
  }
  if (is({"sweeps", "*", "manifest"}) && get) {
    return GetSweepFile(p[1], "run-manifest.json", "application/json");
  }
  if (is({"sweeps", "*", "plots", "*"}) && get) {
    if (!IsValidId(p[3])) throw NotFoundError("unknown plot '" + p[3] + "'");
    return GetSweepFile(p[1], "plots/" + p[3] + ".json", "application/json");
  }
  throw NotFoundError("no route for " + r.method + " " + r.target);
}

HttpResponse Router::PostDataset(const std::string& body) {
  std::string csv_text;
  std::optional<Schema> schema;
  bool adult_preprocess = false;
  bool complete_only = true;
  const auto first = body.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && body[first] == '{') {
    const auto doc = ParseBody(body);
    if (!doc.contains("csv") || !doc["csv"].is_string()) {
      throw BadRequestError("dataset upload needs a \"csv\" string");
    }
    csv_text = doc["csv"].get<std::string>();
    if (doc.contains("schema") && !doc["schema"].is_null()) {
      schema = Schema::FromJson(doc["schema"].dump());
    }
    adult_preprocess = doc.value("adult_preprocess", false);
    complete_only = doc.value("complete_only", true);
  } else {
    csv_text = body;  // bare CSV in the Adult layout
  }
  const std::string id = workspace_.AddDataset(csv_text, schema, adult_preprocess, complete_only);
  auto response = GetDataset(id);
  response.status = 201;
  return response;
}

HttpResponse Router::GetDataset(const std::string& id) {
  const auto dataset = workspace_.GetDataset(id);
  const Schema& schema = dataset->schema();
  std::vector<std::string> columns;
  for (const auto& a : schema.attributes()) columns.push_back(a.name);
  ordered_json doc{{"id", id},
                   {"rows", dataset->size()},
                   {"columns", columns},
                   {"quasi_identifiers", schema.QuasiIdentifierNames()},
                   {"schema", ordered_json::parse(schema.ToJson())}};
  return Json(200, doc.dump());
}

HttpResponse Router::PostHierarchies(const std::string& body) {
  const auto doc = ParseBody(body);
  if (!doc.contains("trees") || !doc["trees"].is_object()) {
    throw BadRequestError("hierarchy upload needs a \"trees\" object");
  }
  std::map<std::string, std::string> trees;
  for (auto it = doc["trees"].begin(); it != doc["trees"].end(); ++it) {
    trees.emplace(it.key(), it.value().dump());
  }
  const std::string id = workspace_.AddHierarchies(trees);
  std::vector<std::string> attributes;
  for (const auto& [name, text] : trees) attributes.push_back(name);
  return Json(201, ordered_json{{"id", id}, {"attributes", attributes}}.dump());
}

HttpResponse Router::PostSession(const std::string& body) {
  const auto doc = ParseBody(body);
  SessionManifest manifest;
  manifest.dataset = doc.at("dataset").get<std::string>();
  manifest.hierarchies = doc.at("hierarchies").get<std::string>();
  manifest.config.k = doc.at("k").get<std::size_t>();
  manifest.config.m = doc.value("m", std::size_t{3});
  if (doc.contains("update")) {
    const auto& u = doc["update"];
    manifest.config.update.eta = u.value("eta", manifest.config.update.eta);
    manifest.config.update.epsilon = u.value("epsilon", manifest.config.update.epsilon);
    manifest.config.update.floor = u.value("floor", manifest.config.update.floor);
  }
  auto dataset = workspace_.GetDataset(manifest.dataset);
  auto hierarchies = workspace_.GetHierarchies(manifest.hierarchies);
  const auto qis = dataset->schema().QuasiIdentifierNames();
  const auto weights = doc.value("weights", ordered_json("equal"));
  if (weights.is_string() && weights.get<std::string>() == "equal") {
    manifest.initial_weights = EqualWeights(qis);
  } else if (weights.is_object()) {
    manifest.initial_weights = WeightVector::Normalize(SlidersFromJson(weights));
  } else {
    throw BadRequestError("weights must be \"equal\" or an object");
  }
  auto session = Session::Create(dataset, hierarchies, manifest.config,
                                 manifest.initial_weights, Workspace::NewId("s-"));
  manifest.id = session->id();
  manifest.initial_weights = session->initial_weights();
  workspace_.SaveSession(manifest);
  auto live = std::make_shared<LiveSession>();
  live->session = std::move(session);
  const std::string summary = SessionSummary(*live->session, &manifest);
  {
    std::lock_guard lock(sessions_mutex_);
    sessions_.emplace(manifest.id, std::move(live));
  }
  return Json(201, summary);
}

std::shared_ptr<Router::LiveSession> Router::FindSession(const std::string& id) {
  std::lock_guard lock(sessions_mutex_);
  if (auto it = sessions_.find(id); it != sessions_.end()) return it->second;
  const auto manifest = workspace_.LoadSessionManifest(id);
  if (!manifest) throw NotFoundError("unknown session '" + id + "'");
  auto live = std::make_shared<LiveSession>();
  live->session = Session::Restore(workspace_.GetDataset(manifest->dataset),
                                   workspace_.GetHierarchies(manifest->hierarchies),
                                   manifest->config, manifest->initial_weights,
                                   workspace_.LoadActions(id), id);
  sessions_.emplace(id, live);
  return live;
}

bool Router::HasSession(const std::string& id) {
  try {
    FindSession(id);
    return true;
  } catch (const Error&) {
    return false;
  }
}

HttpResponse Router::GetSession(const std::string& id) {
  auto live = FindSession(id);
  const auto manifest = workspace_.LoadSessionManifest(id);
  return Json(200, SessionSummary(*live->session, manifest ? &*manifest : nullptr));
}

void Router::PublishRound(const std::string& id, Session& session) {
  const auto proposal = session.Propose();
  hub_.Publish(id, "proposal", ProposalToJson(session, proposal));
}

HttpResponse Router::GetRound(const std::string& id) {
  auto live = FindSession(id);
  Session& session = *live->session;
  const bool fresh = session.phase() == SessionPhase::kLoaded;
  const auto proposal = session.Propose();
  std::string text = ProposalToJson(session, proposal);
  if (fresh) hub_.Publish(id, "proposal", text);
  return Json(200, std::move(text));
}

template <typename Fn>
SessionMetrics Router::RunAction(const std::string& id, Fn&& action) {
  auto live = FindSession(id);
  std::unique_lock gate(live->gate, std::try_to_lock);
  if (!gate.owns_lock()) throw BusyError("session " + id + " is busy with another action");
  Session& session = *live->session;
  const std::size_t before = session.log().size();
  action(session);
  const auto log = session.log();
  for (std::size_t i = before; i < log.size(); ++i) workspace_.AppendAction(id, log[i]);
  const SessionMetrics metrics = session.Metrics();
  hub_.Publish(id, "metrics", MetricsToJson(metrics));
  if (metrics.phase != SessionPhase::kComplete) PublishRound(id, session);
  return metrics;
}

SessionMetrics Router::Choice(const std::string& id, std::size_t record) {
  return RunAction(id, [&](Session& s) { s.Choose(record); });
}

SessionMetrics Router::Weights(const std::string& id, const Sliders& sliders) {
  return RunAction(id, [&](Session& s) { s.SetWeights(sliders); });
}

SessionMetrics Router::Autopilot(const std::string& id) {
  return RunAction(id, [&](Session& s) { s.Autopilot(); });
}

HttpResponse Router::PostChoice(const std::string& id, const std::string& body) {
  const auto doc = ParseBody(body);
  if (!doc.contains("record") || !doc["record"].is_number_unsigned()) {
    throw BadRequestError("choice needs a non-negative integer \"record\"");
  }
  return Json(200, MetricsToJson(Choice(id, doc["record"].get<std::size_t>())));
}

HttpResponse Router::PostWeights(const std::string& id, const std::string& body) {
  const auto doc = ParseBody(body);
  if (!doc.contains("sliders")) throw BadRequestError("weights needs a \"sliders\" object");
  return Json(200, MetricsToJson(Weights(id, SlidersFromJson(doc["sliders"]))));
}

HttpResponse Router::PostAutopilot(const std::string& id) {
  return Json(200, MetricsToJson(Autopilot(id)));
}

HttpResponse Router::GetMetrics(const std::string& id) {
  return Json(200, MetricsToJson(FindSession(id)->session->Metrics()));
}

HttpResponse Router::GetExport(const std::string& id) {
  return {200, "text/csv", Export(FindSession(id)->session->Result())};
}

HttpResponse Router::GetLog(const std::string& id) {
  ordered_json actions = ordered_json::array();
  for (const auto& a : FindSession(id)->session->log()) {
    actions.push_back(ordered_json::parse(ActionToJson(a)));
  }
  return Json(200, ordered_json{{"session", id}, {"actions", std::move(actions)}}.dump());
}

std::string Router::HandleStreamMessage(const std::string& session_id,
                                        std::string_view message) {
  try {
    const auto doc = ParseBody(message);
    const std::string type = doc.value("type", "");
    if (type == "choice") {
      if (!doc.contains("record") || !doc["record"].is_number_unsigned()) {
        throw BadRequestError("choice needs a non-negative integer \"record\"");
      }
      Choice(session_id, doc["record"].get<std::size_t>());
    } else if (type == "weights") {
      if (!doc.contains("sliders")) throw BadRequestError("weights needs \"sliders\"");
      Weights(session_id, SlidersFromJson(doc["sliders"]));
    } else if (type == "autopilot") {
      Autopilot(session_id);
    } else if (type == "round") {
      auto live = FindSession(session_id);
      PublishRound(session_id, *live->session);
    } else {
      throw BadRequestError("unknown message type '" + type + "'");
    }
    return {};
  } catch (const Error& e) {
    return ErrorFrame(e);
  } catch (const std::exception& e) {
    return ErrorFrame(BadRequestError(e.what()));
  }
}

HttpResponse Router::PostSweep(const std::string& body) {
  auto doc = ParseBody(body);
  const fs::path root = workspace_.root();
  if (doc.contains("dataset") && doc["dataset"].is_string()) {
    const std::string id = doc["dataset"].get<std::string>();
    workspace_.GetDataset(id);  // NotFoundError for unknown ids
    const fs::path dir = fs::absolute(workspace_.DatasetDir(id));
    ordered_json data = doc.value("data", ordered_json::object());
    data["csv"] = (dir / "data.csv").string();
    data["schema"] = (dir / "schema.json").string();
    data["adult_preprocess"] = false;
    doc["data"] = std::move(data);
    doc.erase("dataset");
  }
  if (doc.contains("hierarchies") && doc["hierarchies"].is_string()) {
    const std::string ref = doc["hierarchies"].get<std::string>();
    if (IsValidId(ref) && fs::is_directory(workspace_.HierarchyDir(ref))) {
      doc["hierarchies"] = fs::absolute(workspace_.HierarchyDir(ref)).string();
    }
  }
  const SweepConfig config = SweepConfig::FromJson(doc.dump(), root);
  const std::string id = Workspace::NewId("w-");
  const fs::path out = workspace_.SweepDir(id);
  fs::create_directories(out);
  {
    std::ofstream file(out / "config.json", std::ios::binary);
    file << config.ToJson() << '\n';
  }
  auto handle = jobs_.Submit(id, "sweep", [config, out, id](const JobPool::Progress& progress) {
    const SweepResult result = RunSweep(config, progress);
    EmitReport(result, config, out);
    return "sweeps/" + id;
  });
  return Json(202, handle.ToJson());
}

HttpResponse Router::GetJob(const std::string& id) {
  if (auto job = jobs_.Get(id)) return Json(200, job->ToJson());
  if (IsValidId(id) && fs::exists(workspace_.JobFile(id))) {
    return Json(200, ReadText(workspace_.JobFile(id)));
  }
  throw NotFoundError("unknown job '" + id + "'");
}

HttpResponse Router::GetSweepFile(const std::string& id, const std::string& file,
                                  const std::string& content_type) {
  if (!IsValidId(id)) throw NotFoundError("unknown sweep '" + id + "'");
  if (auto job = jobs_.Get(id)) {
    if (job->state == JobState::kFailed) {
      return Json(422, ordered_json{{"error_code", job->error_code},
                                    {"message", job->message},
                                    {"detail", "sweep " + id + " failed"}}
                           .dump());
    }
    if (job->state != JobState::kDone) {
      throw PhaseError("sweep " + id + " is still " + std::string(JobStateName(job->state)));
    }
  }
  const fs::path path = workspace_.SweepDir(id) / file;
  if (!fs::exists(path)) throw NotFoundError("no " + file + " for sweep '" + id + "'");
  return {200, content_type, ReadText(path)};
}

}  // namespace anonforge::service
