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
#include "anonforge/service/job_pool.h"

#include <stdexcept>

#include "anonforge/error.h"
#include "json.hpp"

namespace anonforge::service {

std::string_view JobStateName(JobState state) {
  switch (state) {
    case JobState::kQueued: return "queued";
    case JobState::kRunning: return "running";
    case JobState::kDone: return "done";
    case JobState::kFailed: return "failed";
  }
  return "queued";
}

std::string JobHandle::ToJson() const {
  nlohmann::ordered_json doc{{"id", id},
                             {"kind", kind},
                             {"state", JobStateName(state)},
                             {"progress", progress}};
  doc["result"] = result.empty() ? nlohmann::ordered_json() : nlohmann::ordered_json(result);
  if (state == JobState::kFailed) {
    doc["error"] = {{"error_code", error_code}, {"message", message}};
  }
  return doc.dump();
}

JobPool::JobPool(std::size_t workers, std::size_t queue_capacity, Listener listener)
    : capacity_(queue_capacity), listener_(std::move(listener)) {
  if (workers == 0) throw ConfigError("job pool needs at least one worker");
  for (std::size_t i = 0; i < workers; ++i) threads_.emplace_back([this] { WorkerLoop(); });
}

JobPool::~JobPool() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  wake_.notify_all();
  for (auto& t : threads_) t.join();
}

JobHandle JobPool::Submit(std::string id, std::string kind, Work work) {
  JobHandle handle;
  {
    std::lock_guard lock(mutex_);
    if (queue_.size() >= capacity_) throw BusyError("job queue is full");
    if (jobs_.contains(id)) throw BadRequestError("duplicate job id " + id);
    handle.id = id;
    handle.kind = std::move(kind);
    jobs_.emplace(id, handle);
    queue_.push_back({std::move(id), std::move(work)});
  }
  if (listener_) listener_(handle);
  wake_.notify_one();
  return handle;
}

std::optional<JobHandle> JobPool::Get(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = jobs_.find(id);
  if (it == jobs_.end()) return std::nullopt;
  return it->second;
}

void JobPool::WaitIdle() {
  std::unique_lock lock(mutex_);
  idle_.wait(lock, [this] { return queue_.empty() && active_ == 0; });
}

void JobPool::Advance(const std::string& id, JobState next, double progress) {
  JobHandle snapshot;
  {
    std::lock_guard lock(mutex_);
    JobHandle& job = jobs_.at(id);
    if (next < job.state) throw std::logic_error("job state cannot move backward");
    job.state = next;
    if (progress >= 0.0) job.progress = std::max(job.progress, progress);
    snapshot = job;
  }
  if (listener_) listener_(snapshot);
}

void JobPool::WorkerLoop() {
  for (;;) {
    Pending pending;
    {
      std::unique_lock lock(mutex_);
      wake_.wait(lock, [this] { return stopping_ || !queue_.empty(); });
      if (stopping_ && queue_.empty()) return;
      pending = std::move(queue_.front());
      queue_.pop_front();
      ++active_;
    }
    Advance(pending.id, JobState::kRunning);
    std::string result;
    std::string error_code;
    std::string message;
    bool failed = false;
    try {
      result = pending.work([&](double p) {
        std::lock_guard lock(mutex_);
        JobHandle& job = jobs_.at(pending.id);
        job.progress = std::max(job.progress, std::min(p, 1.0));
      });
    } catch (const Error& e) {
      failed = true;
      error_code = std::string(e.code_name());
      message = e.what();
      if (!e.detail().empty()) message += " (" + e.detail() + ")";
    } catch (const std::exception& e) {
      failed = true;
      error_code = "internal_error";
      message = e.what();
    }
    {
      std::lock_guard lock(mutex_);
      JobHandle& job = jobs_.at(pending.id);
      job.result = result;
      job.error_code = error_code;
      job.message = message;
    }
    Advance(pending.id, failed ? JobState::kFailed : JobState::kDone, failed ? -1.0 : 1.0);
    {
      std::lock_guard lock(mutex_);
      --active_;
    }
    idle_.notify_all();
  }
}

}  // namespace anonforge::service
