#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace unani {

/// Base for every domain error raised by the toolkit. `code()` is a stable
/// snake_case token that the CLI and the REST layer surface verbatim.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  [[nodiscard]] const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace unani
