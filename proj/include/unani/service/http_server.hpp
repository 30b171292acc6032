#pragma once

#include <memory>
#include <string>

#include "unani/service/api.hpp"

namespace unani::service {

struct HttpOptions {
  std::string cors_origin;  // empty disables CORS headers
  std::size_t max_body_bytes = 1 << 20;
};

/// cpp-httplib front end that forwards every request to an Api.
class HttpServer {
 public:
  HttpServer(Api& api, HttpOptions options = {});
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds without serving; port 0 picks a free port. Returns the bound port.
  /// Throws Error(bind_failed).
  int bind(const std::string& host, int port);

  /// Serves until stop(); call after bind().
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace unani::service
