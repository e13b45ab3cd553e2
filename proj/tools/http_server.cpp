#include "http_server.hpp"

#include <httplib.h>

#include <thread>

namespace galois::http {

namespace {

void route(httplib::Server& server, const api::Service& service) {
  auto handler = [&service](const httplib::Request& req, httplib::Response& res) {
    api::Request r;
    r.method = req.method;
    r.path = req.path;
    for (const auto& [k, v] : req.params) r.query.emplace(k, v);
    r.body = req.body;
    const auto out = service.handle(r);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  server.Get(R"(/api/.*)", handler);
  server.Post(R"(/api/.*)", handler);
  server.Put(R"(/api/.*)", handler);
  server.Delete(R"(/api/.*)", handler);
}

}  // namespace

bool serve(const api::Service& service, const std::string& host, int port, const std::function<void(int)>& on_ready) {
  httplib::Server server;
  route(server, service);
  const int bound = port == 0 ? server.bind_to_any_port(host) : (server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) return false;
  if (on_ready) on_ready(bound);
  return server.listen_after_bind();
}

struct BackgroundServer::Impl {
  httplib::Server server;
  std::thread thread;
};

BackgroundServer::BackgroundServer(const api::Service& service, const std::string& host)
    : impl_(std::make_unique<Impl>()) {
  route(impl_->server, service);
  port_ = impl_->server.bind_to_any_port(host);
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

BackgroundServer::~BackgroundServer() { stop(); }

void BackgroundServer::stop() {
  if (impl_->thread.joinable()) {
    impl_->server.stop();
    impl_->thread.join();
  }
}

}  // namespace galois::http
