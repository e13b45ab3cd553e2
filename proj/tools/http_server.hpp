#pragma once

#include <functional>
#include <memory>
#include <string>

#include "galois/api.hpp"

namespace galois::http {

/// Serves `service` until the process is stopped. `on_ready` receives the bound port.
/// Returns false if the socket could not be bound.
bool serve(const api::Service& service, const std::string& host, int port,
           const std::function<void(int)>& on_ready = {});

/// Runs the server on a background thread for tests; stop() joins it.
class BackgroundServer {
 public:
  BackgroundServer(const api::Service& service, const std::string& host = "127.0.0.1");
  ~BackgroundServer();
  int port() const noexcept { return port_; }
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int port_ = 0;
};

}  // namespace galois::http
