#include "unani/service/config.hpp"

#include <charconv>
#include <cstdlib>

#include "unani/common/error.hpp"

namespace unani::service {

namespace {

std::int64_t parse_positive(const std::string& name, const std::string& value) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size() || v <= 0) {
    throw Error("invalid_config", name + " must be a positive integer, got '" + value + "'");
  }
  return v;
}

}  // namespace

void apply_bind(ServiceConfig& cfg, const std::string& bind) {
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) {
    if (bind.empty()) throw Error("invalid_config", "empty bind address");
    cfg.host = bind;
    return;
  }
  if (colon > 0) cfg.host = bind.substr(0, colon);
  const auto port = bind.substr(colon + 1);
  int v = 0;
  auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), v);
  if (ec != std::errc() || ptr != port.data() + port.size() || v < 0 || v > 65535) {
    throw Error("invalid_config", "bad port in bind address '" + bind + "'");
  }
  cfg.port = v;
}

ServiceConfig config_from_env(ServiceConfig base, const EnvLookup& env) {
  auto get = [&](const char* name) -> std::string {
    const char* v = env(name);
    return v == nullptr ? std::string() : std::string(v);
  };
  if (auto v = get("UNANI_BIND"); !v.empty()) apply_bind(base, v);
  if (auto v = get("UNANI_DATA_DIR"); !v.empty()) base.data_dir = v;
  if (auto v = get("UNANI_KB"); !v.empty()) base.kb_path = v;
  if (auto v = get("UNANI_RULES"); !v.empty()) {
    base.rules_paths.clear();
    std::size_t start = 0;
    while (start <= v.size()) {
      const auto sep = v.find(':', start);
      const auto part = v.substr(start, sep - start);
      if (!part.empty()) base.rules_paths.emplace_back(part);
      if (sep == std::string::npos) break;
      start = sep + 1;
    }
  }
  if (auto v = get("UNANI_TEMPLATES"); !v.empty()) base.templates_path = v;
  if (auto v = get("UNANI_TOKEN_TTL"); !v.empty()) base.token_ttl_seconds = parse_positive("UNANI_TOKEN_TTL", v);
  if (auto v = get("UNANI_CORS_ORIGIN"); !v.empty()) base.cors_origin = v;
  if (auto v = get("UNANI_PBKDF2_ITERATIONS"); !v.empty()) {
    base.password_iterations = static_cast<int>(parse_positive("UNANI_PBKDF2_ITERATIONS", v));
  }
  return base;
}

ServiceConfig config_from_env(ServiceConfig base) {
  return config_from_env(std::move(base), [](const char* n) { return std::getenv(n); });
}

}  // namespace unani::service
