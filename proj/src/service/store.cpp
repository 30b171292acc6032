#include "unani/service/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <iterator>

#include "unani/service/ids.hpp"

namespace unani::service {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr int kSnapshotFormat = 1;
constexpr const char* kLogName = "events.log";
constexpr const char* kSnapshotName = "snapshot.json";

[[noreturn]] void io_error(const std::string& what, const fs::path& p) {
  throw Error("io_error", what + " " + p.string() + ": " + std::strerror(errno));
}

void write_all(int fd, const std::string& data, const fs::path& p) {
  std::size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = ::write(fd, data.data() + off, data.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      io_error("write", p);
    }
    off += static_cast<std::size_t>(n);
  }
}

void sync_dir(const fs::path& dir) {
  const int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY);
  if (fd < 0) return;
  ::fsync(fd);
  ::close(fd);
}

template <typename T, typename F>
void put_all(std::map<std::string, T>& m, const json& arr, F from) {
  for (const auto& j : arr) {
    T v = from(j);
    m.emplace(v.id, std::move(v));
  }
}

template <typename T>
json dump_all(const std::map<std::string, T>& m) {
  json out = json::array();
  for (const auto& [id, v] : m) out.push_back(to_json(v));
  return out;
}

template <typename T>
T& existing(std::map<std::string, T>& m, const std::string& id, const char* what) {
  auto it = m.find(id);
  if (it == m.end()) throw Error("malformed_event", std::string("event refers to missing ") + what + " " + id);
  return it->second;
}

}  // namespace

const Account* StoreState::account_by_username(std::string_view username) const {
  for (const auto& [id, a] : accounts) {
    if (a.username == username) return &a;
  }
  return nullptr;
}

json state_to_json(const StoreState& s) {
  json accounts = json::array();
  for (const auto& [id, a] : s.accounts) accounts.push_back(to_json(a, true));
  json sessions = json::array();
  for (const auto& [h, v] : s.sessions) sessions.push_back(to_json(v));
  return {{"accounts", std::move(accounts)},
          {"sessions", std::move(sessions)},
          {"patients", dump_all(s.patients)},
          {"reports", dump_all(s.reports)},
          {"appointments", dump_all(s.appointments)}};
}

StoreState state_from_json(const json& j) {
  StoreState s;
  try {
    put_all(s.accounts, j.at("accounts"), account_from_json);
    for (const auto& e : j.at("sessions")) {
      auto v = session_from_json(e);
      s.sessions.emplace(v.token_hash, std::move(v));
    }
    put_all(s.patients, j.at("patients"), patient_from_json);
    put_all(s.reports, j.at("reports"), report_from_json);
    put_all(s.appointments, j.at("appointments"), appointment_from_json);
  } catch (const json::exception& ex) {
    throw Error("malformed_record", ex.what());
  }
  return s;
}

void apply_event(StoreState& state, const Event& event) {
  const json& d = event.data;
  try {
    if (event.type == "account_created") {
      auto a = account_from_json(d);
      state.accounts[a.id] = std::move(a);
    } else if (event.type == "session_created") {
      auto s = session_from_json(d);
      state.sessions[s.token_hash] = std::move(s);
    } else if (event.type == "patient_created") {
      auto p = patient_from_json(d);
      state.patients[p.id] = std::move(p);
    } else if (event.type == "symptoms_recorded") {
      existing(state.patients, d.at("patient_id").get<std::string>(), "patient")
          .symptom_entries.push_back(symptom_entry_from_json(d.at("entry")));
    } else if (event.type == "report_created") {
      auto r = report_from_json(d);
      state.reports[r.id] = std::move(r);
    } else if (event.type == "report_chosen") {
      auto& r = existing(state.reports, d.at("report_id").get<std::string>(), "report");
      r.chosen_disease = d.at("disease_id").get<std::string>();
      r.plan = inference::plan_from_json(d.at("plan"));
    } else if (event.type == "appointment_created") {
      auto a = appointment_from_json(d);
      state.appointments[a.id] = std::move(a);
    } else if (event.type == "appointment_status") {
      auto& a = existing(state.appointments, d.at("appointment_id").get<std::string>(), "appointment");
      auto st = parse_appointment_status(d.at("status").get<std::string>());
      if (!st) throw Error("malformed_event", "bad appointment status");
      a.status = *st;
    } else {
      throw Error("malformed_event", "unknown event type " + event.type);
    }
  } catch (const json::exception& ex) {
    throw Error("malformed_event", event.type + ": " + ex.what());
  }
}

Store::Store(fs::path dir, StoreOptions options) : dir_(std::move(dir)), options_(options) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw Error("io_error", "cannot create " + dir_.string() + ": " + ec.message());
  load();
}

Store::~Store() {
  if (log_fd_ >= 0) ::close(log_fd_);
}

void Store::load() {
  const fs::path snap = dir_ / kSnapshotName;
  if (fs::exists(snap)) {
    std::ifstream in(snap);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || j.value("version", 0) != kSnapshotFormat) {
      throw Error("malformed_snapshot", "cannot read " + snap.string());
    }
    state_ = state_from_json(j.at("state"));
    seq_ = j.at("seq").get<std::uint64_t>();
  }

  const fs::path log = dir_ / kLogName;
  if (fs::exists(log)) {
    std::ifstream in(log, std::ios::binary);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t good = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
      const auto nl = text.find('\n', pos);
      if (nl == std::string::npos) break;  // interrupted append
      json j = json::parse(text.begin() + static_cast<std::ptrdiff_t>(pos),
                           text.begin() + static_cast<std::ptrdiff_t>(nl), nullptr, false);
      if (j.is_discarded()) {
        if (nl + 1 >= text.size()) break;  // torn final record
        throw Error("malformed_log", "corrupt record at byte " + std::to_string(pos) + " of " + log.string());
      }
      Event e{j.at("seq").get<std::uint64_t>(), j.at("type").get<std::string>(), j.at("at").get<std::string>(),
              j.at("data")};
      pos = good = nl + 1;
      if (e.seq <= seq_) continue;
      apply_event(state_, e);
      seq_ = e.seq;
      ++since_snapshot_;
    }
    if (good != text.size()) fs::resize_file(log, good);
  }

  log_fd_ = ::open(log.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (log_fd_ < 0) io_error("open", log);
}

void Store::append_locked(const std::string& lines) {
  write_all(log_fd_, lines, dir_ / kLogName);
  if (options_.fsync && ::fsync(log_fd_) != 0) io_error("fsync", dir_ / kLogName);
}

void Store::transact(const std::function<void(const StoreState&, PendingEvents&)>& fn) {
  std::unique_lock lock(mu_);
  PendingEvents pending;
  fn(state_, pending);
  if (pending.empty()) return;

  StoreState next = state_;
  std::string lines;
  std::uint64_t seq = seq_;
  const std::string at = format_timestamp(unix_millis());
  for (auto& [type, data] : pending) {
    Event e{++seq, type, at, std::move(data)};
    apply_event(next, e);
    lines += json{{"seq", e.seq}, {"type", e.type}, {"at", e.at}, {"data", e.data}}.dump() + "\n";
  }
  append_locked(lines);
  state_ = std::move(next);
  seq_ = seq;
  since_snapshot_ += pending.size();
  if (options_.snapshot_every > 0 && since_snapshot_ >= options_.snapshot_every) write_snapshot_locked();
}

void Store::read(const std::function<void(const StoreState&)>& fn) const {
  std::shared_lock lock(mu_);
  fn(state_);
}

StoreState Store::state() const {
  std::shared_lock lock(mu_);
  return state_;
}

std::uint64_t Store::last_seq() const {
  std::shared_lock lock(mu_);
  return seq_;
}

void Store::compact() {
  std::unique_lock lock(mu_);
  write_snapshot_locked();
}

void Store::write_snapshot_locked() {
  const fs::path snap = dir_ / kSnapshotName;
  const fs::path tmp = dir_ / (std::string(kSnapshotName) + ".tmp");
  const std::string body =
      json{{"version", kSnapshotFormat}, {"seq", seq_}, {"state", state_to_json(state_)}}.dump() + "\n";
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) io_error("open", tmp);
  write_all(fd, body, tmp);
  if (options_.fsync) ::fsync(fd);
  ::close(fd);
  fs::rename(tmp, snap);
  if (options_.fsync) sync_dir(dir_);
  // Events up to seq_ are now in the snapshot; a crash before this truncate
  // is harmless because replay skips them.
  if (::ftruncate(log_fd_, 0) != 0) io_error("truncate", dir_ / kLogName);
  if (options_.fsync) ::fsync(log_fd_);
  since_snapshot_ = 0;
}

}  // namespace unani::service
