#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace unani::service {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path data_dir = "unani-data";
  std::filesystem::path kb_path;
  std::vector<std::filesystem::path> rules_paths;
  std::filesystem::path templates_path;  // empty: built-in templates
  std::int64_t token_ttl_seconds = 24 * 3600;
  std::string cors_origin;
  int password_iterations = 120'000;
  std::size_t snapshot_every = 256;
};

using EnvLookup = std::function<const char*(const char*)>;

/// Overlays environment settings on `base`:
///   UNANI_BIND        host, host:port or :port
///   UNANI_DATA_DIR    store directory
///   UNANI_KB          knowledge base JSON
///   UNANI_RULES       ':'-separated rule files
///   UNANI_TEMPLATES   prompt template file
///   UNANI_TOKEN_TTL   session lifetime in seconds
///   UNANI_CORS_ORIGIN value for Access-Control-Allow-Origin
///   UNANI_PBKDF2_ITERATIONS
/// Throws Error(invalid_config).
[[nodiscard]] ServiceConfig config_from_env(ServiceConfig base, const EnvLookup& env);
[[nodiscard]] ServiceConfig config_from_env(ServiceConfig base);

/// Parses "host", "host:port" or ":port" into `cfg`.
void apply_bind(ServiceConfig& cfg, const std::string& bind);

}  // namespace unani::service
