#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include <json.hpp>

#include "unani/service/engines.hpp"
#include "unani/service/ids.hpp"
#include "unani/service/store.hpp"

namespace unani::service {

struct ApiRequest {
  std::string method;
  std::string path;  // without query string
  std::string body;
  std::string authorization;  // raw Authorization header
};

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

struct ApiOptions {
  std::int64_t token_ttl_seconds = 24 * 3600;
  int password_iterations = 120'000;
  std::function<std::int64_t()> clock_ms = unix_millis;
};

/// Transport-independent REST surface under /api/v1. Thread-safe.
class Api {
 public:
  static constexpr std::string_view kPrefix = "/api/v1";

  Api(Store& store, const Engines& engines, ApiOptions options = {});
  ~Api();
  Api(const Api&) = delete;
  Api& operator=(const Api&) = delete;

  [[nodiscard]] ApiResponse handle(const ApiRequest& request);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace unani::service
