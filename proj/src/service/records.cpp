#include "unani/service/records.hpp"

#include <array>

namespace unani::service {

namespace {

using json = nlohmann::json;

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<const char*, N>& names, std::string_view s) noexcept {
  for (std::size_t i = 0; i < N; ++i) {
    if (s == names[i]) return static_cast<E>(i);
  }
  return std::nullopt;
}

constexpr std::array<const char*, 2> kRoles{"practitioner", "patient"};
constexpr std::array<const char*, 3> kGenders{"female", "male", "other"};
constexpr std::array<const char*, 3> kEngines{"rules", "tree", "text"};
constexpr std::array<const char*, 3> kStatuses{"requested", "confirmed", "completed"};

template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& ex) {
    throw Error("malformed_record", std::string(what) + ": " + ex.what());
  }
}

template <typename E>
E required_enum(const json& j, const char* key, std::optional<E> (*parse)(std::string_view) noexcept) {
  auto v = parse(j.at(key).get<std::string>());
  if (!v) throw Error("malformed_record", std::string("bad value for ") + key);
  return *v;
}

}  // namespace

const char* to_string(Role v) noexcept { return kRoles[static_cast<std::size_t>(v)]; }
const char* to_string(Gender v) noexcept { return kGenders[static_cast<std::size_t>(v)]; }
const char* to_string(EngineKind v) noexcept { return kEngines[static_cast<std::size_t>(v)]; }
const char* to_string(AppointmentStatus v) noexcept { return kStatuses[static_cast<std::size_t>(v)]; }

std::optional<Role> parse_role(std::string_view s) noexcept { return lookup<Role>(kRoles, s); }
std::optional<Gender> parse_gender(std::string_view s) noexcept { return lookup<Gender>(kGenders, s); }
std::optional<EngineKind> parse_engine(std::string_view s) noexcept { return lookup<EngineKind>(kEngines, s); }
std::optional<AppointmentStatus> parse_appointment_status(std::string_view s) noexcept {
  return lookup<AppointmentStatus>(kStatuses, s);
}

json to_json(const Account& a, bool include_secret) {
  json j = {{"id", a.id}, {"role", to_string(a.role)}, {"username", a.username}, {"created_at", a.created_at}};
  if (include_secret) j["credential"] = a.credential;
  return j;
}

json to_json(const Session& s) {
  return {{"token_hash", s.token_hash}, {"account_id", s.account_id}, {"expires_at", s.expires_at}};
}

json to_json(const SymptomEntry& e) {
  return {{"at", e.at}, {"raw_text", e.raw_text}, {"findings", e.findings}};
}

json to_json(const PatientProfile& p) {
  json entries = json::array();
  for (const auto& e : p.symptom_entries) entries.push_back(to_json(e));
  return {{"id", p.id},
          {"name", p.name},
          {"age", p.age},
          {"gender", to_string(p.gender)},
          {"symptom_entries", std::move(entries)},
          {"assigned_practitioner", p.assigned_practitioner ? json(*p.assigned_practitioner) : json(nullptr)},
          {"owner_account_id", p.owner_account_id},
          {"created_at", p.created_at}};
}

json to_json(const DiagnosisReport& r) {
  return {{"id", r.id},
          {"patient_id", r.patient_id},
          {"engine", to_string(r.engine)},
          {"differential", inference::differential_to_json(r.differential)},
          {"chosen_disease", r.chosen_disease ? json(*r.chosen_disease) : json(nullptr)},
          {"plan", r.plan ? inference::plan_to_json(*r.plan) : json(nullptr)},
          {"created_at", r.created_at}};
}

json to_json(const Appointment& a) {
  return {{"id", a.id},
          {"patient_id", a.patient_id},
          {"practitioner_id", a.practitioner_id},
          {"scheduled_at", a.scheduled_at},
          {"status", to_string(a.status)},
          {"created_at", a.created_at}};
}

Account account_from_json(const json& j) {
  return guarded("account", [&] {
    return Account{j.at("id").get<std::string>(), required_enum(j, "role", parse_role),
                   j.at("username").get<std::string>(), j.value("credential", std::string()),
                   j.at("created_at").get<std::string>()};
  });
}

Session session_from_json(const json& j) {
  return guarded("session", [&] {
    return Session{j.at("token_hash").get<std::string>(), j.at("account_id").get<std::string>(),
                   j.at("expires_at").get<std::int64_t>()};
  });
}

SymptomEntry symptom_entry_from_json(const json& j) {
  return guarded("symptom entry", [&] {
    return SymptomEntry{j.at("at").get<std::string>(), j.at("raw_text").get<std::string>(),
                        j.at("findings").get<std::vector<std::string>>()};
  });
}

PatientProfile patient_from_json(const json& j) {
  return guarded("patient", [&] {
    PatientProfile p;
    p.id = j.at("id").get<std::string>();
    p.name = j.at("name").get<std::string>();
    p.age = j.at("age").get<int>();
    p.gender = required_enum(j, "gender", parse_gender);
    for (const auto& e : j.at("symptom_entries")) p.symptom_entries.push_back(symptom_entry_from_json(e));
    if (const auto& ap = j.at("assigned_practitioner"); !ap.is_null()) p.assigned_practitioner = ap.get<std::string>();
    p.owner_account_id = j.at("owner_account_id").get<std::string>();
    p.created_at = j.at("created_at").get<std::string>();
    return p;
  });
}

DiagnosisReport report_from_json(const json& j) {
  return guarded("report", [&] {
    DiagnosisReport r;
    r.id = j.at("id").get<std::string>();
    r.patient_id = j.at("patient_id").get<std::string>();
    r.engine = required_enum(j, "engine", parse_engine);
    r.differential = inference::differential_from_json(j.at("differential"));
    if (const auto& c = j.at("chosen_disease"); !c.is_null()) r.chosen_disease = c.get<std::string>();
    if (const auto& p = j.at("plan"); !p.is_null()) r.plan = inference::plan_from_json(p);
    r.created_at = j.at("created_at").get<std::string>();
    return r;
  });
}

Appointment appointment_from_json(const json& j) {
  return guarded("appointment", [&] {
    return Appointment{j.at("id").get<std::string>(),
                       j.at("patient_id").get<std::string>(),
                       j.at("practitioner_id").get<std::string>(),
                       j.at("scheduled_at").get<std::string>(),
                       required_enum(j, "status", parse_appointment_status),
                       j.at("created_at").get<std::string>()};
  });
}

}  // namespace unani::service
