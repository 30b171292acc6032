#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "unani/service/records.hpp"

namespace unani::service {

struct StoreState {
  std::map<std::string, Account> accounts;
  std::map<std::string, Session> sessions;  // keyed by token hash
  std::map<std::string, PatientProfile> patients;
  std::map<std::string, DiagnosisReport> reports;
  std::map<std::string, Appointment> appointments;

  [[nodiscard]] const Account* account_by_username(std::string_view username) const;

  friend bool operator==(const StoreState&, const StoreState&) = default;
};

[[nodiscard]] nlohmann::json state_to_json(const StoreState& s);
[[nodiscard]] StoreState state_from_json(const nlohmann::json& j);

struct Event {
  std::uint64_t seq = 0;
  std::string type;
  std::string at;
  nlohmann::json data;
};

/// Applies one event. Throws Error(malformed_event) for unknown types or
/// events referring to missing records.
void apply_event(StoreState& state, const Event& event);

struct StoreOptions {
  std::size_t snapshot_every = 256;  // 0 disables snapshots
  bool fsync = true;
};

/// Durable state: an append-only NDJSON event log (events.log) plus a
/// periodically compacted snapshot (snapshot.json, replaced atomically).
/// Writers are serialized; readers share a lock and see whole transactions.
class Store {
 public:
  using PendingEvents = std::vector<std::pair<std::string, nlohmann::json>>;

  explicit Store(std::filesystem::path dir, StoreOptions options = {});
  ~Store();
  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  /// Runs `fn` under the writer lock. Events it queues are logged, synced and
  /// applied together after it returns; an exception discards them.
  void transact(const std::function<void(const StoreState&, PendingEvents&)>& fn);

  void read(const std::function<void(const StoreState&)>& fn) const;

  [[nodiscard]] StoreState state() const;
  [[nodiscard]] std::uint64_t last_seq() const;
  [[nodiscard]] const std::filesystem::path& dir() const noexcept { return dir_; }

  /// Writes a snapshot now and truncates the log.
  void compact();

 private:
  void load();
  void write_snapshot_locked();
  void append_locked(const std::string& lines);

  std::filesystem::path dir_;
  StoreOptions options_;
  mutable std::shared_mutex mu_;
  StoreState state_;
  std::uint64_t seq_ = 0;
  std::size_t since_snapshot_ = 0;
  int log_fd_ = -1;
};

}  // namespace unani::service
