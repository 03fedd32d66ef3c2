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
#ifndef ANONFORGE_SERVICE_JOB_POOL_H_
#define ANONFORGE_SERVICE_JOB_POOL_H_

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace anonforge::service {

enum class JobState { kQueued, kRunning, kDone, kFailed };
std::string_view JobStateName(JobState state);

struct JobHandle {
  std::string id;
  std::string kind;
  JobState state = JobState::kQueued;
  double progress = 0.0;
  std::string result;  // location of the output once done
  std::string error_code;
  std::string message;

  std::string ToJson() const;
};

// Bounded pool: a fixed number of workers and a capped queue. States only
// move forward (queued -> running -> done | failed).
class JobPool {
 public:
  using Progress = std::function<void(double)>;
  // Returns the result location; exceptions mark the job failed.
  using Work = std::function<std::string(const Progress&)>;
  // Observes every state change, e.g. to persist it.
  using Listener = std::function<void(const JobHandle&)>;

  JobPool(std::size_t workers, std::size_t queue_capacity = 64, Listener listener = {});
  ~JobPool();

  JobPool(const JobPool&) = delete;
  JobPool& operator=(const JobPool&) = delete;

  // BusyError when the queue is full.
  JobHandle Submit(std::string id, std::string kind, Work work);
  std::optional<JobHandle> Get(const std::string& id) const;
  // Blocks until no job is queued or running.
  void WaitIdle();
  std::size_t workers() const { return threads_.size(); }

 private:
  struct Pending {
    std::string id;
    Work work;
  };

  void WorkerLoop();
  // Throws std::logic_error on a backward transition.
  void Advance(const std::string& id, JobState next, double progress = -1.0);

  std::size_t capacity_;
  Listener listener_;
  mutable std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable idle_;
  std::deque<Pending> queue_;
  std::map<std::string, JobHandle> jobs_;
  std::size_t active_ = 0;
  bool stopping_ = false;
  std::vector<std::thread> threads_;
};

}  // namespace anonforge::service

#endif  // ANONFORGE_SERVICE_JOB_POOL_H_
