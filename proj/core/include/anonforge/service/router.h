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
#ifndef ANONFORGE_SERVICE_ROUTER_H_
#define ANONFORGE_SERVICE_ROUTER_H_

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "anonforge/error.h"
#include "anonforge/service/job_pool.h"
#include "anonforge/service/stream_hub.h"
#include "anonforge/service/workspace.h"
#include "anonforge/session.h"

namespace anonforge::service {

struct HttpRequest {
  std::string method;  // "GET", "POST", ...
  std::string target;  // path, optionally with a query string
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

// Maps REST requests and stream messages onto the engine. Transport-free, so
// it can be driven directly in tests.
//
//   POST /datasets                 {csv, schema?, adult_preprocess?, complete_only?}
//   GET  /datasets/:id
//   POST /hierarchies              {trees: {attribute: tree}}
//   POST /sessions                 {dataset, hierarchies, k, weights?, m?, update?}
//   GET  /sessions/:id
//   GET  /sessions/:id/round
//   POST /sessions/:id/choice      {record}
//   POST /sessions/:id/weights     {sliders}
//   POST /sessions/:id/autopilot
//   GET  /sessions/:id/metrics
//   GET  /sessions/:id/export      (text/csv)
//   GET  /sessions/:id/log
//   POST /sweeps                   sweep config, optionally with dataset/hierarchies ids
//   GET  /jobs/:id
//   GET  /sweeps/:id/results       (text/csv)
//   GET  /sweeps/:id/plots/:target
//   GET  /sweeps/:id/manifest
//   GET  /health
//
// Errors answer {error_code, message, detail}: 404 not_found, 409 busy and
// phase_error, 400 for malformed requests, 422 for other engine errors.
class Router {
 public:
  Router(Workspace& workspace, StreamHub& hub, JobPool& jobs);

  HttpResponse Handle(const HttpRequest& request);

  // Stream channel. Messages mirror the REST bodies with a "type" of
  // "choice", "weights", "autopilot" or "round". Results are published to
  // every subscriber; the returned text is an error frame for the sender
  // only, or empty.
  bool HasSession(const std::string& id);
  std::string HandleStreamMessage(const std::string& session_id, std::string_view message);

  static std::string ErrorFrame(const Error& error);
  static int StatusFor(ErrorCode code);

 private:
  struct LiveSession {
    std::unique_ptr<Session> session;
    // Held across an action and its frames so stream order follows action order.
    std::mutex gate;
  };

  std::shared_ptr<LiveSession> FindSession(const std::string& id);
  HttpResponse Dispatch(const HttpRequest& request);

  HttpResponse PostDataset(const std::string& body);
  HttpResponse GetDataset(const std::string& id);
  HttpResponse PostHierarchies(const std::string& body);
  HttpResponse PostSession(const std::string& body);
  HttpResponse GetSession(const std::string& id);
  HttpResponse GetRound(const std::string& id);
  HttpResponse PostChoice(const std::string& id, const std::string& body);
  HttpResponse PostWeights(const std::string& id, const std::string& body);
  HttpResponse PostAutopilot(const std::string& id);
  HttpResponse GetMetrics(const std::string& id);
  HttpResponse GetExport(const std::string& id);
  HttpResponse GetLog(const std::string& id);
  HttpResponse PostSweep(const std::string& body);
  HttpResponse GetJob(const std::string& id);
  HttpResponse GetSweepFile(const std::string& id, const std::string& file,
                            const std::string& content_type);

  SessionMetrics Choice(const std::string& id, std::size_t record);
  SessionMetrics Weights(const std::string& id, const Sliders& sliders);
  SessionMetrics Autopilot(const std::string& id);
  void PublishRound(const std::string& id, Session& session);

  template <typename Fn>
  SessionMetrics RunAction(const std::string& id, Fn&& action);

  Workspace& workspace_;
  StreamHub& hub_;
  JobPool& jobs_;
  std::mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<LiveSession>> sessions_;
};

}  // namespace anonforge::service

#endif  // ANONFORGE_SERVICE_ROUTER_H_
