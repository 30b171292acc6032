#include "unani/common/validation.hpp"

#include <algorithm>

namespace unani {

const char* to_string(Severity severity) noexcept {
  return severity == Severity::error ? "error" : "warning";
}

bool ValidationReport::has_errors() const noexcept {
  return std::any_of(violations.begin(), violations.end(),
                     [](const Violation& v) { return v.severity == Severity::error; });
}

std::size_t ValidationReport::count(const std::string& code) const noexcept {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(), [&](const Violation& v) { return v.code == code; }));
}

void ValidationReport::add(std::string code, std::string subject, std::string message,
                           Severity severity) {
  violations.push_back({std::move(code), std::move(subject), std::move(message), severity});
}

nlohmann::json ValidationReport::to_json() const {
  auto arr = nlohmann::json::array();
  for (const auto& v : violations) {
    arr.push_back({{"code", v.code},
                   {"subject", v.subject},
                   {"message", v.message},
                   {"severity", to_string(v.severity)}});
  }
  return arr;
}

}  // namespace unani
