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
#ifndef ANONFORGE_SERVICE_STREAM_HUB_H_
#define ANONFORGE_SERVICE_STREAM_HUB_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <string_view>

namespace anonforge::service {

// Fans session events out to stream subscribers. Each session has its own
// frame counter; frames are numbered and delivered under one lock, so every
// subscriber of a session sees the same totally ordered sequence.
class StreamHub {
 public:
  // Called with the hub lock held; must not block or call back into the hub.
  using Sink = std::function<void(const std::string& frame)>;

  std::size_t Subscribe(const std::string& session, Sink sink);
  void Unsubscribe(const std::string& session, std::size_t token);
  std::size_t subscriber_count(const std::string& session) const;

  // Sends {"type":<type>,"seq":<n>,"session":<id>,<type>:<payload>} and
  // returns n. Sequence numbers start at 1 per session.
  std::uint64_t Publish(const std::string& session, std::string_view type,
                        std::string_view payload_json);

 private:
  struct Channel {
    std::uint64_t sequence = 0;
    std::map<std::size_t, Sink> sinks;
  };

  mutable std::mutex mutex_;
  std::map<std::string, Channel> channels_;
  std::size_t next_token_ = 1;
};

}  // namespace anonforge::service

#endif  // ANONFORGE_SERVICE_STREAM_HUB_H_
