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
#include "anonforge/service/server.h"

#include <boost/asio/dispatch.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/post.hpp>
#include <boost/asio/signal_set.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <chrono>
#include <deque>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>
#include <vector>

#include "anonforge/error.h"
#include "anonforge/service/job_pool.h"
#include "anonforge/service/router.h"
#include "anonforge/service/stream_hub.h"
#include "anonforge/service/workspace.h"

namespace anonforge::service {
namespace {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

constexpr std::uint64_t kBodyLimit = 512ull << 20;

// Returns the session id for "/sessions/<id>/stream", else empty.
std::string StreamTarget(std::string_view target) {
  target = target.substr(0, target.find('?'));
  constexpr std::string_view kPrefix = "/sessions/";
  constexpr std::string_view kSuffix = "/stream";
  if (!target.starts_with(kPrefix) || !target.ends_with(kSuffix)) return {};
  const auto id = target.substr(kPrefix.size(),
                                target.size() - kPrefix.size() - kSuffix.size());
  return IsValidId(id) ? std::string(id) : std::string();
}

class StreamSession : public std::enable_shared_from_this<StreamSession> {
 public:
  StreamSession(tcp::socket&& socket, Router& router, StreamHub& hub, std::string id)
      : ws_(std::move(socket)), router_(router), hub_(hub), id_(std::move(id)) {}

  ~StreamSession() {
    if (token_ != 0) hub_.Unsubscribe(id_, token_);
  }

  void Run(http::request<http::string_body> request) {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(request,
                     beast::bind_front_handler(&StreamSession::OnAccept, shared_from_this()));
  }

 private:
  void OnAccept(beast::error_code ec) {
    if (ec) return;
    ws_.text(true);
    if (id_.empty() || !router_.HasSession(id_)) {
      closing_ = true;
      Enqueue(Router::ErrorFrame(NotFoundError("unknown session '" + id_ + "'")));
      return;
    }
    std::weak_ptr<StreamSession> weak = weak_from_this();
    token_ = hub_.Subscribe(id_, [weak](const std::string& frame) {
      if (auto self = weak.lock()) {
        auto executor = self->ws_.get_executor();
        net::post(executor, [self = std::move(self), frame]() mutable {
          self->Enqueue(std::move(frame));
        });
      }
    });
    DoRead();
  }

  void Enqueue(std::string frame) {
    queue_.push_back(std::move(frame));
    if (queue_.size() == 1) DoWrite();
  }

  void DoWrite() {
    ws_.async_write(net::buffer(queue_.front()),
                    beast::bind_front_handler(&StreamSession::OnWrite, shared_from_this()));
  }

  void OnWrite(beast::error_code ec, std::size_t) {
    if (ec) return;
    queue_.pop_front();
    if (!queue_.empty()) {
      DoWrite();
    } else if (closing_) {
      ws_.async_close(websocket::close_reason(websocket::close_code::policy_error,
                                              "unknown session"),
                      [self = shared_from_this()](beast::error_code) {});
    }
  }

  void DoRead() {
    ws_.async_read(buffer_,
                   beast::bind_front_handler(&StreamSession::OnRead, shared_from_this()));
  }

  void OnRead(beast::error_code ec, std::size_t) {
    if (ec) return;
    const std::string message = beast::buffers_to_string(buffer_.data());
    buffer_.consume(buffer_.size());
    std::string error = router_.HandleStreamMessage(id_, message);
    if (!error.empty()) Enqueue(std::move(error));
    DoRead();
  }

  websocket::stream<beast::tcp_stream> ws_;
  beast::flat_buffer buffer_;
  std::deque<std::string> queue_;
  Router& router_;
  StreamHub& hub_;
  std::string id_;
  std::size_t token_ = 0;
  bool closing_ = false;
};

class HttpSession : public std::enable_shared_from_this<HttpSession> {
 public:
  HttpSession(tcp::socket&& socket, Router& router, StreamHub& hub)
      : stream_(std::move(socket)), router_(router), hub_(hub) {}

  void Run() {
    net::dispatch(stream_.get_executor(),
                  beast::bind_front_handler(&HttpSession::DoRead, shared_from_this()));
  }

 private:
  void DoRead() {
    parser_.emplace();
    parser_->body_limit(kBodyLimit);
    stream_.expires_after(std::chrono::seconds(120));
    http::async_read(stream_, buffer_, *parser_,
                     beast::bind_front_handler(&HttpSession::OnRead, shared_from_this()));
  }

  void OnRead(beast::error_code ec, std::size_t) {
    if (ec == http::error::end_of_stream) {
      stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
      return;
    }
    if (ec) return;
    auto request = parser_->release();
    if (websocket::is_upgrade(request)) {
      stream_.expires_never();
      std::make_shared<StreamSession>(stream_.release_socket(), router_, hub_,
                                      StreamTarget(std::string_view(request.target().data(), request.target().size())))
          ->Run(std::move(request));
      return;
    }
    HttpRequest req{std::string(request.method_string()), std::string(request.target()),
                    std::move(request.body())};
    HttpResponse out = router_.Handle(req);
    auto response = std::make_shared<http::response<http::string_body>>(
        static_cast<http::status>(out.status), request.version());
    response->set(http::field::server, "anonforge");
    response->set(http::field::content_type, out.content_type);
    response->keep_alive(request.keep_alive());
    response->body() = std::move(out.body);
    response->prepare_payload();
    http::async_write(stream_, *response,
                      [self = shared_from_this(), response](beast::error_code ec, std::size_t) {
                        self->OnWrite(response->keep_alive(), ec);
                      });
  }

  void OnWrite(bool keep_alive, beast::error_code ec) {
    if (ec) return;
    if (!keep_alive) {
      stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
      return;
    }
    DoRead();
  }

  beast::tcp_stream stream_;
  beast::flat_buffer buffer_;
  std::optional<http::request_parser<http::string_body>> parser_;
  Router& router_;
  StreamHub& hub_;
};

}  // namespace

struct Server::Impl {
  explicit Impl(ServerOptions opts)
      : options(std::move(opts)),
        workspace(options.workdir),
        jobs(options.pool_size, 64,
             [this](const JobHandle& job) {
               std::ofstream out(workspace.JobFile(job.id), std::ios::binary | std::ios::trunc);
               out << job.ToJson() << '\n';
             }),
        router(workspace, hub, jobs),
        ioc(static_cast<int>(std::max<std::size_t>(options.io_threads, 1))),
        acceptor(net::make_strand(ioc)),
        signals(ioc) {}

  void Accept() {
    acceptor.async_accept(net::make_strand(ioc), [this](beast::error_code ec, tcp::socket s) {
      if (ec == net::error::operation_aborted) return;
      if (!ec) std::make_shared<HttpSession>(std::move(s), router, hub)->Run();
      Accept();
    });
  }

  ServerOptions options;
  Workspace workspace;
  StreamHub hub;
  JobPool jobs;
  Router router;
  net::io_context ioc;
  tcp::acceptor acceptor;
  net::signal_set signals;
  std::vector<std::thread> threads;
  unsigned short bound_port = 0;
};

Server::Server(ServerOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {}

Server::~Server() {
  Stop();
  Wait();
}

unsigned short Server::Start() {
  beast::error_code ec;
  const auto address = net::ip::make_address(impl_->options.address, ec);
  if (ec) throw ConfigError("bad listen address '" + impl_->options.address + "'");
  const tcp::endpoint endpoint(address, impl_->options.port);
  auto& acceptor = impl_->acceptor;
  acceptor.open(endpoint.protocol(), ec);
  if (!ec) acceptor.set_option(net::socket_base::reuse_address(true), ec);
  if (!ec) acceptor.bind(endpoint, ec);
  if (!ec) acceptor.listen(net::socket_base::max_listen_connections, ec);
  if (ec) {
    throw IoError("cannot listen on " + impl_->options.address + ":" +
                  std::to_string(impl_->options.port) + ": " + ec.message());
  }
  impl_->bound_port = acceptor.local_endpoint().port();
  impl_->Accept();
  if (impl_->options.handle_signals) {
    impl_->signals.add(SIGINT);
    impl_->signals.add(SIGTERM);
    impl_->signals.async_wait([this](beast::error_code, int) { Stop(); });
  }
  const std::size_t n = std::max<std::size_t>(impl_->options.io_threads, 1);
  for (std::size_t i = 0; i < n; ++i) {
    impl_->threads.emplace_back([this] { impl_->ioc.run(); });
  }
  return impl_->bound_port;
}

void Server::Wait() {
  for (auto& t : impl_->threads) {
    if (t.joinable() && t.get_id() != std::this_thread::get_id()) t.join();
  }
}

void Server::Stop() { impl_->ioc.stop(); }

Router& Server::router() { return impl_->router; }

unsigned short Server::port() const { return impl_->bound_port; }

}  // namespace anonforge::service
