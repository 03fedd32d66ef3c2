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
#ifndef ANONFORGE_SERVICE_WIRE_H_
#define ANONFORGE_SERVICE_WIRE_H_

#include <string>

#include "anonforge/error.h"
#include "anonforge/session.h"

namespace anonforge::service {

// JSON encodings shared by the REST responses and the stream frames.
std::string ProposalToJson(const Session& session, const RoundProposal& proposal);
std::string MetricsToJson(const SessionMetrics& metrics);
std::string ErrorToJson(const Error& error);

}  // namespace anonforge::service

#endif  // ANONFORGE_SERVICE_WIRE_H_
