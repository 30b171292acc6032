#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace unani {

enum class Severity { warning, error };

[[nodiscard]] const char* to_string(Severity severity) noexcept;

struct Violation {
  std::string code;
  std::string subject;
  std::string message;
  Severity severity = Severity::error;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Report-style validation result. Empty means well-formed.
struct ValidationReport {
  std::vector<Violation> violations;

  [[nodiscard]] bool empty() const noexcept { return violations.empty(); }
  [[nodiscard]] bool has_errors() const noexcept;
  [[nodiscard]] std::size_t count(const std::string& code) const noexcept;

  void add(std::string code, std::string subject, std::string message,
           Severity severity = Severity::error);

  [[nodiscard]] nlohmann::json to_json() const;
};

}  // namespace unani
