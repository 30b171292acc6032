#pragma once

#include <string>
#include <string_view>

namespace unani::service {

/// Hex of `bytes` bytes from the OS CSPRNG.
[[nodiscard]] std::string random_hex(std::size_t bytes);

[[nodiscard]] std::string sha256_hex(std::string_view data);

/// "pbkdf2-sha256$<iterations>$<salt hex>$<hash hex>"
[[nodiscard]] std::string hash_password(std::string_view password, int iterations);

/// Constant-time comparison; false for malformed encodings.
[[nodiscard]] bool verify_password(std::string_view password, std::string_view encoded);

}  // namespace unani::service
