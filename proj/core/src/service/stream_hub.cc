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
#include "anonforge/service/stream_hub.h"

#include "json.hpp"

namespace anonforge::service {

std::size_t StreamHub::Subscribe(const std::string& session, Sink sink) {
  std::lock_guard lock(mutex_);
  const std::size_t token = next_token_++;
  channels_[session].sinks.emplace(token, std::move(sink));
  return token;
}

void StreamHub::Unsubscribe(const std::string& session, std::size_t token) {
  std::lock_guard lock(mutex_);
  auto it = channels_.find(session);
  if (it != channels_.end()) it->second.sinks.erase(token);
}

std::size_t StreamHub::subscriber_count(const std::string& session) const {
  std::lock_guard lock(mutex_);
  auto it = channels_.find(session);
  return it == channels_.end() ? 0 : it->second.sinks.size();
}

std::uint64_t StreamHub::Publish(const std::string& session, std::string_view type,
                                 std::string_view payload_json) {
  std::lock_guard lock(mutex_);
  Channel& channel = channels_[session];
  const std::uint64_t seq = ++channel.sequence;
  nlohmann::ordered_json frame;
  frame["type"] = type;
  frame["seq"] = seq;
  frame["session"] = session;
  frame[std::string(type)] = nlohmann::ordered_json::parse(payload_json);
  const std::string text = frame.dump();
  for (const auto& [token, sink] : channel.sinks) sink(text);
  return seq;
}

}  // namespace anonforge::service
