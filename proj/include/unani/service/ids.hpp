#pragma once

#include <cstdint>
#include <mutex>
#include <random>
#include <string>

namespace unani::service {

/// 26-character Crockford base32 ids: 48-bit millisecond time, then 80 bits
/// of randomness. Ids from one generator sort in creation order; within one
/// millisecond the random part is incremented.
class IdGenerator {
 public:
  IdGenerator();
  explicit IdGenerator(std::uint64_t seed);

  [[nodiscard]] std::string next(std::int64_t unix_ms);
  [[nodiscard]] std::string next();

 private:
  std::mutex mu_;
  std::mt19937_64 rng_;
  std::int64_t last_ms_ = -1;
  std::uint16_t hi_ = 0;  // top 16 random bits
  std::uint64_t lo_ = 0;  // low 64 random bits
};

[[nodiscard]] std::int64_t unix_millis();
/// "2026-01-02T03:04:05.678Z"
[[nodiscard]] std::string format_timestamp(std::int64_t unix_ms);

}  // namespace unani::service
