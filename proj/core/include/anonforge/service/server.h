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
#ifndef ANONFORGE_SERVICE_SERVER_H_
#define ANONFORGE_SERVICE_SERVER_H_

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>

namespace anonforge::service {

class Router;

struct ServerOptions {
  std::string address = "127.0.0.1";
  unsigned short port = 8080;  // 0 picks a free port
  std::filesystem::path workdir = "anonforge-work";
  std::size_t pool_size = 2;   // sweep workers
  std::size_t io_threads = 4;  // connection handlers
  bool handle_signals = false; // stop on SIGINT / SIGTERM
};

// HTTP/1.1 REST front end plus the WebSocket stream at /sessions/:id/stream.
class Server {
 public:
  explicit Server(ServerOptions options);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds and starts serving in background threads; returns the bound port.
  unsigned short Start();
  // Blocks until Stop() is called from another thread or a signal handler.
  void Wait();
  void Stop();

  Router& router();
  unsigned short port() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace anonforge::service

#endif  // ANONFORGE_SERVICE_SERVER_H_
