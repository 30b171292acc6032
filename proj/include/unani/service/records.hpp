#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "unani/common/error.hpp"
#include "unani/inference/engine.hpp"

namespace unani::service {

/// Error carrying the HTTP status it maps to.
class ApiError : public Error {
 public:
  ApiError(int status, std::string code, const std::string& message)
      : Error(std::move(code), message), status_(status) {}

  [[nodiscard]] int status() const noexcept { return status_; }

 private:
  int status_;
};

enum class Role { practitioner, patient };
enum class Gender { female, male, other };
enum class EngineKind { rules, tree, text };
enum class AppointmentStatus { requested, confirmed, completed };

[[nodiscard]] const char* to_string(Role v) noexcept;
[[nodiscard]] const char* to_string(Gender v) noexcept;
[[nodiscard]] const char* to_string(EngineKind v) noexcept;
[[nodiscard]] const char* to_string(AppointmentStatus v) noexcept;
[[nodiscard]] std::optional<Role> parse_role(std::string_view s) noexcept;
[[nodiscard]] std::optional<Gender> parse_gender(std::string_view s) noexcept;
[[nodiscard]] std::optional<EngineKind> parse_engine(std::string_view s) noexcept;
[[nodiscard]] std::optional<AppointmentStatus> parse_appointment_status(std::string_view s) noexcept;

struct Account {
  std::string id;
  Role role = Role::practitioner;
  std::string username;
  std::string credential;  // encoded password hash; never sent to clients
  std::string created_at;

  friend bool operator==(const Account&, const Account&) = default;
};

struct Session {
  std::string token_hash;
  std::string account_id;
  std::int64_t expires_at = 0;  // unix seconds

  friend bool operator==(const Session&, const Session&) = default;
};

struct SymptomEntry {
  std::string at;
  std::string raw_text;
  std::vector<std::string> findings;

  friend bool operator==(const SymptomEntry&, const SymptomEntry&) = default;
};

struct PatientProfile {
  std::string id;
  std::string name;
  int age = 0;
  Gender gender = Gender::other;
  std::vector<SymptomEntry> symptom_entries;
  std::optional<std::string> assigned_practitioner;
  std::string owner_account_id;
  std::string created_at;

  friend bool operator==(const PatientProfile&, const PatientProfile&) = default;
};

struct DiagnosisReport {
  std::string id;
  std::string patient_id;
  EngineKind engine = EngineKind::rules;
  inference::Differential differential;
  std::optional<std::string> chosen_disease;
  std::optional<inference::TreatmentPlan> plan;
  std::string created_at;

  friend bool operator==(const DiagnosisReport&, const DiagnosisReport&) = default;
};

struct Appointment {
  std::string id;
  std::string patient_id;
  std::string practitioner_id;
  std::string scheduled_at;
  AppointmentStatus status = AppointmentStatus::requested;
  std::string created_at;

  friend bool operator==(const Appointment&, const Appointment&) = default;
};

/// `include_secret` adds the credential; only the store uses it.
[[nodiscard]] nlohmann::json to_json(const Account& a, bool include_secret = false);
[[nodiscard]] nlohmann::json to_json(const Session& s);
[[nodiscard]] nlohmann::json to_json(const SymptomEntry& e);
[[nodiscard]] nlohmann::json to_json(const PatientProfile& p);
[[nodiscard]] nlohmann::json to_json(const DiagnosisReport& r);
[[nodiscard]] nlohmann::json to_json(const Appointment& a);

/// Each throws Error(malformed_record) on a shape mismatch.
[[nodiscard]] Account account_from_json(const nlohmann::json& j);
[[nodiscard]] Session session_from_json(const nlohmann::json& j);
[[nodiscard]] SymptomEntry symptom_entry_from_json(const nlohmann::json& j);
[[nodiscard]] PatientProfile patient_from_json(const nlohmann::json& j);
[[nodiscard]] DiagnosisReport report_from_json(const nlohmann::json& j);
[[nodiscard]] Appointment appointment_from_json(const nlohmann::json& j);

}  // namespace unani::service
