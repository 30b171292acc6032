#include "unani/service/ids.hpp"

#include <chrono>
#include <ctime>

namespace unani::service {

namespace {

constexpr char kCrockford[] = "0123456789ABCDEFGHJKMNPQRSTVWXYZ";

}  // namespace

IdGenerator::IdGenerator() : rng_(std::random_device{}()) {}
IdGenerator::IdGenerator(std::uint64_t seed) : rng_(seed) {}

std::string IdGenerator::next() { return next(unix_millis()); }

std::string IdGenerator::next(std::int64_t unix_ms) {
  std::lock_guard lock(mu_);
  if (unix_ms > last_ms_) {
    last_ms_ = unix_ms;
    hi_ = static_cast<std::uint16_t>(rng_() & 0x7FFF);  // headroom for increments
    lo_ = rng_();
  } else if (++lo_ == 0) {
    ++hi_;
  }
  const auto ms = static_cast<std::uint64_t>(last_ms_);
  std::string out(26, '0');
  for (int i = 9; i >= 0; --i) out[static_cast<std::size_t>(9 - i)] = kCrockford[(ms >> (5 * i)) & 31];
  // 80 random bits: hi_ (16) then lo_ (64), 16 characters.
  for (int i = 0; i < 16; ++i) {
    const int bit = 75 - 5 * i;  // position of the character's top bit within 80
    std::uint64_t v = 0;
    for (int b = 0; b < 5; ++b) {
      const int pos = bit - b;
      const std::uint64_t bitval = pos >= 64 ? (hi_ >> (pos - 64)) & 1U : (lo_ >> pos) & 1U;
      v = (v << 1) | bitval;
    }
    out[static_cast<std::size_t>(10 + i)] = kCrockford[v];
  }
  return out;
}

std::int64_t unix_millis() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

std::string format_timestamp(std::int64_t unix_ms) {
  const std::time_t secs = static_cast<std::time_t>(unix_ms / 1000);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(unix_ms % 1000));
  return out;
}

}  // namespace unani::service
