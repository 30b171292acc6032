#include "unani/service/api.hpp"

#include <regex>

#include "unani/common/identifier.hpp"
#include "unani/learning/dataset.hpp"
#include "unani/learning/text_match.hpp"
#include "unani/service/crypto.hpp"

namespace unani::service {

namespace {

using json = nlohmann::json;

constexpr std::size_t kMaxTextBytes = 10'000;

struct Context {
  const ApiRequest& request;
  std::vector<std::string> params;
  Account account;

  json body() const {
    if (collapse_whitespace(request.body).empty()) return json::object();
    json j = json::parse(request.body, nullptr, false);
    if (j.is_discarded()) throw ApiError(400, "invalid_json", "request body is not valid JSON");
    if (!j.is_object()) throw ApiError(400, "invalid_request", "request body must be a JSON object");
    return j;
  }
};

[[noreturn]] void bad_request(const std::string& message) { throw ApiError(400, "invalid_request", message); }

std::string string_field(const json& body, const char* key, bool required = true) {
  if (!body.contains(key) || body[key].is_null()) {
    if (required) bad_request(std::string("missing field '") + key + "'");
    return {};
  }
  if (!body[key].is_string()) bad_request(std::string("field '") + key + "' must be a string");
  return body[key].get<std::string>();
}

void require_practitioner(const Context& ctx) {
  if (ctx.account.role != Role::practitioner) {
    throw ApiError(403, "forbidden", "this action requires the practitioner role");
  }
}

bool can_access(const Account& account, const PatientProfile& p) {
  return account.role == Role::practitioner || p.owner_account_id == account.id;
}

const PatientProfile& accessible_patient(const StoreState& s, const Context& ctx, const std::string& id) {
  auto it = s.patients.find(id);
  if (it == s.patients.end()) throw ApiError(404, "not_found", "unknown patient " + id);
  if (!can_access(ctx.account, it->second)) throw ApiError(403, "forbidden", "not your patient record");
  return it->second;
}

inference::DiagnosisParams parse_params(const json& j) {
  inference::DiagnosisParams p;
  if (j.is_null()) return p;
  if (!j.is_object()) bad_request("params must be an object");
  try {
    if (j.contains("threshold")) p.threshold = j.at("threshold").get<double>();
    if (j.contains("strict_vocabulary")) p.strict_vocabulary = j.at("strict_vocabulary").get<bool>();
    if (j.contains("kind_weights")) {
      const auto& w = j.at("kind_weights");
      if (w.contains("symptom")) p.kind_weights.symptom = w.at("symptom").get<double>();
      if (w.contains("cause")) p.kind_weights.cause = w.at("cause").get<double>();
    }
  } catch (const json::exception&) {
    bad_request("malformed diagnosis params");
  }
  return p;
}

json finding_refs(const kb::KnowledgeBase& kb, const std::vector<std::string>& ids, kb::FindingKind kind) {
  json out = json::array();
  for (const auto& id : ids) {
    const kb::Finding* f = kb.find_finding(id);
    if (f != nullptr && f->kind == kind) out.push_back({{"id", id}, {"label", f->label}});
  }
  return out;
}

json disease_summary(const kb::Disease& d) {
  return {{"id", d.id}, {"name", d.name}, {"alt_name", d.alt_name ? json(*d.alt_name) : json(nullptr)}};
}

}  // namespace

struct Api::Impl {
  using Handler = std::function<ApiResponse(Context&)>;

  struct Route {
    std::string method;
    std::vector<std::string> segments;  // "{}" captures
    bool authenticated = true;
    Handler handler;
  };

  Store& store;
  const Engines& engines;
  ApiOptions options;
  IdGenerator ids;
  std::string dummy_credential;
  std::vector<Route> routes;

  Impl(Store& s, const Engines& e, ApiOptions o)
      : store(s), engines(e), options(std::move(o)), dummy_credential(hash_password("", options.password_iterations)) {
    add("POST", "/auth/signup", false, [this](Context& c) { return signup(c); });
    add("POST", "/auth/login", false, [this](Context& c) { return login(c); });
    add("GET", "/patients", true, [this](Context& c) { return list_patients(c); });
    add("POST", "/patients", true, [this](Context& c) { return create_patient(c); });
    add("GET", "/patients/{}", true, [this](Context& c) { return get_patient(c); });
    add("POST", "/patients/{}/symptoms", true, [this](Context& c) { return record_symptoms(c); });
    add("POST", "/patients/{}/diagnose", true, [this](Context& c) { return run_diagnosis(c); });
    add("GET", "/patients/{}/reports", true, [this](Context& c) { return list_reports(c); });
    add("GET", "/reports/{}", true, [this](Context& c) { return get_report(c); });
    add("POST", "/reports/{}/choose", true, [this](Context& c) { return choose(c); });
    add("GET", "/diseases", true, [this](Context& c) { return list_diseases(c); });
    add("GET", "/diseases/{}", true, [this](Context& c) { return get_disease(c); });
    add("GET", "/diseases/{}/treatments", true, [this](Context& c) { return disease_treatments(c); });
    add("GET", "/appointments", true, [this](Context& c) { return list_appointments(c); });
    add("POST", "/appointments", true, [this](Context& c) { return create_appointment(c); });
    add("POST", "/appointments/{}/status", true, [this](Context& c) { return appointment_status(c); });
    add("GET", "/stats/dashboard", true, [this](Context& c) { return dashboard(c); });
  }

  void add(std::string method, std::string_view pattern, bool auth, Handler h) {
    routes.push_back({std::move(method), split(pattern), auth, std::move(h)});
  }

  static std::vector<std::string> split(std::string_view path) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < path.size()) {
      if (path[i] == '/') {
        ++i;
        continue;
      }
      const auto j = path.find('/', i);
      out.emplace_back(path.substr(i, j - i));
      if (j == std::string_view::npos) break;
      i = j;
    }
    return out;
  }

  std::int64_t now_ms() const { return options.clock_ms(); }
  std::string now() const { return format_timestamp(now_ms()); }
  std::string new_id() { return ids.next(now_ms()); }

  ApiResponse dispatch(const ApiRequest& req) {
    std::string_view path = req.path;
    if (path.substr(0, kPrefix.size()) != kPrefix ||
        (path.size() > kPrefix.size() && path[kPrefix.size()] != '/')) {
      throw ApiError(404, "not_found", "no such route");
    }
    path.remove_prefix(kPrefix.size());
    const auto segs = split(path);

    bool path_matched = false;
    for (const auto& route : routes) {
      if (route.segments.size() != segs.size()) continue;
      std::vector<std::string> params;
      bool ok = true;
      for (std::size_t i = 0; i < segs.size() && ok; ++i) {
        if (route.segments[i] == "{}") {
          params.push_back(segs[i]);
        } else {
          ok = route.segments[i] == segs[i];
        }
      }
      if (!ok) continue;
      path_matched = true;
      if (route.method != req.method) continue;
      Context ctx{req, std::move(params), {}};
      if (route.authenticated) ctx.account = authenticate(req);
      return route.handler(ctx);
    }
    if (path_matched) throw ApiError(405, "method_not_allowed", "method not allowed on this route");
    throw ApiError(404, "not_found", "no such route");
  }

  Account authenticate(const ApiRequest& req) {
    constexpr std::string_view scheme = "Bearer ";
    if (req.authorization.size() <= scheme.size() || req.authorization.compare(0, scheme.size(), scheme) != 0) {
      throw ApiError(401, "unauthenticated", "missing bearer token");
    }
    const std::string hash = sha256_hex(std::string_view(req.authorization).substr(scheme.size()));
    Account out;
    bool found = false;
    store.read([&](const StoreState& s) {
      auto it = s.sessions.find(hash);
      if (it == s.sessions.end() || it->second.expires_at * 1000 <= now_ms()) return;
      auto acc = s.accounts.find(it->second.account_id);
      if (acc == s.accounts.end()) return;
      out = acc->second;
      found = true;
    });
    if (!found) throw ApiError(401, "unauthenticated", "invalid or expired token");
    return out;
  }

  // -- auth --------------------------------------------------------------

  ApiResponse signup(Context& ctx) {
    const json body = ctx.body();
    const std::string username = string_field(body, "username");
    const std::string password = string_field(body, "password");
    const std::string role_text = string_field(body, "role", false);
    if (username.size() < 3 || username.size() > 64) bad_request("username must be 3 to 64 characters");
    for (unsigned char c : username) {
      if (c <= ' ' || c == 0x7F) bad_request("username must not contain spaces or control characters");
    }
    if (password.size() < 8 || password.size() > 256) bad_request("password must be 8 to 256 characters");
    Role role = Role::practitioner;
    if (!role_text.empty()) {
      auto r = parse_role(role_text);
      if (!r) bad_request("role must be practitioner or patient");
      role = *r;
    }

    Account account{new_id(), role, username, hash_password(password, options.password_iterations), now()};
    store.transact([&](const StoreState& s, Store::PendingEvents& ev) {
      if (s.account_by_username(username) != nullptr) {
        throw ApiError(409, "username_taken", "username already registered");
      }
      ev.emplace_back("account_created", to_json(account, true));
    });
    return {201, {{"account", to_json(account)}}};
  }

  ApiResponse login(Context& ctx) {
    const json body = ctx.body();
    const std::string username = string_field(body, "username");
    const std::string password = string_field(body, "password");
    std::optional<Account> account;
    store.read([&](const StoreState& s) {
      if (const Account* a = s.account_by_username(username)) account = *a;
    });
    const bool ok = verify_password(password, account ? account->credential : dummy_credential) && account;
    if (!ok) throw ApiError(401, "invalid_credentials", "invalid username or password");

    const std::string token = random_hex(32);
    const std::int64_t expires = now_ms() / 1000 + options.token_ttl_seconds;
    Session session{sha256_hex(token), account->id, expires};
    store.transact([&](const StoreState&, Store::PendingEvents& ev) {
      ev.emplace_back("session_created", to_json(session));
    });
    return {200, {{"token", token}, {"expires_at", format_timestamp(expires * 1000)}, {"account", to_json(*account)}}};
  }

  // -- patients ----------------------------------------------------------

  ApiResponse list_patients(Context& ctx) {
    json out = json::array();
    store.read([&](const StoreState& s) {
      for (const auto& [id, p] : s.patients) {
        if (can_access(ctx.account, p)) out.push_back(to_json(p));
      }
    });
    return {200, out};
  }

  ApiResponse create_patient(Context& ctx) {
    const json body = ctx.body();
    PatientProfile p;
    p.name = collapse_whitespace(string_field(body, "name"));
    if (p.name.empty() || p.name.size() > 200) bad_request("name must be 1 to 200 characters");
    if (!body.contains("age") || !body["age"].is_number_integer()) bad_request("age must be an integer");
    p.age = body["age"].get<int>();
    if (p.age < 0 || p.age > 150) bad_request("age must be between 0 and 150");
    auto g = parse_gender(string_field(body, "gender"));
    if (!g) bad_request("gender must be female, male or other");
    p.gender = *g;
    const std::string assigned = string_field(body, "assigned_practitioner", false);
    if (!assigned.empty()) {
      p.assigned_practitioner = assigned;
    } else if (ctx.account.role == Role::practitioner) {
      p.assigned_practitioner = ctx.account.id;
    }
    p.owner_account_id = ctx.account.id;
    p.id = new_id();
    p.created_at = now();
    store.transact([&](const StoreState& s, Store::PendingEvents& ev) {
      if (p.assigned_practitioner) {
        auto it = s.accounts.find(*p.assigned_practitioner);
        if (it == s.accounts.end() || it->second.role != Role::practitioner) {
          throw ApiError(422, "unknown_practitioner", "assigned practitioner does not exist");
        }
      }
      ev.emplace_back("patient_created", to_json(p));
    });
    return {201, to_json(p)};
  }

  ApiResponse get_patient(Context& ctx) {
    json out;
    store.read([&](const StoreState& s) { out = to_json(accessible_patient(s, ctx, ctx.params[0])); });
    return {200, out};
  }

  ApiResponse record_symptoms(Context& ctx) {
    const json body = ctx.body();
    const std::string text = string_field(body, "text");
    if (collapse_whitespace(text).empty()) bad_request("text must not be empty");
    if (text.size() > kMaxTextBytes) bad_request("text is too long");
    const auto match = learning::match_findings(engines.kb, text);
    SymptomEntry entry{now(), text, {match.finding_ids.begin(), match.finding_ids.end()}};
    store.transact([&](const StoreState& s, Store::PendingEvents& ev) {
      accessible_patient(s, ctx, ctx.params[0]);
      ev.emplace_back("symptoms_recorded", json{{"patient_id", ctx.params[0]}, {"entry", to_json(entry)}});
    });
    json resolved = json::array();
    for (const auto& id : entry.findings) {
      const kb::Finding* f = engines.kb.find_finding(id);
      resolved.push_back({{"id", id}, {"label", f->label}, {"kind", kb::to_string(f->kind)}});
    }
    return {201,
            {{"entry", to_json(entry)},
             {"resolved", std::move(resolved)},
             {"unresolved", match.unresolved},
             {"warning", entry.findings.empty() ? json("no known symptoms or causes recognized") : json(nullptr)}}};
  }

  // -- diagnosis ---------------------------------------------------------

  ApiResponse run_diagnosis(Context& ctx) {
    const json body = ctx.body();
    const std::string engine_text = body.contains("engine") ? string_field(body, "engine") : "rules";
    const auto engine = parse_engine(engine_text);
    if (!engine) throw ApiError(400, "unknown_engine", "engine must be rules, tree or text");
    const auto params = parse_params(body.contains("params") ? body["params"] : json(nullptr));

    std::set<std::string> findings;
    std::string text;
    store.read([&](const StoreState& s) {
      const auto& p = accessible_patient(s, ctx, ctx.params[0]);
      for (const auto& e : p.symptom_entries) {
        findings.insert(e.findings.begin(), e.findings.end());
        if (!text.empty()) text += "\n";
        text += e.raw_text;
      }
    });
    if (*engine == EngineKind::text ? text.empty() : findings.empty()) {
      throw ApiError(422, "no_usable_findings", "patient has no usable symptom entries");
    }

    DiagnosisReport report;
    try {
      report.differential = run_engine(engines, *engine, findings, text, params);
    } catch (const inference::InferenceError& e) {
      if (e.code() == "invalid_params") throw ApiError(400, e.code(), e.what());
      throw ApiError(422, e.code(), e.what());
    } catch (const learning::LearningError& e) {
      throw ApiError(422, e.code() == "empty_text" ? "no_usable_findings" : e.code(), e.what());
    }
    report.differential.warnings.clear();
    report.id = new_id();
    report.patient_id = ctx.params[0];
    report.engine = *engine;
    report.created_at = now();
    store.transact([&](const StoreState& s, Store::PendingEvents& ev) {
      accessible_patient(s, ctx, report.patient_id);
      ev.emplace_back("report_created", to_json(report));
    });
    return {201, to_json(report)};
  }

  const DiagnosisReport& accessible_report(const StoreState& s, const Context& ctx, const std::string& id) {
    auto it = s.reports.find(id);
    if (it == s.reports.end()) throw ApiError(404, "not_found", "unknown report " + id);
    accessible_patient(s, ctx, it->second.patient_id);
    return it->second;
  }

  ApiResponse list_reports(Context& ctx) {
    json out = json::array();
    store.read([&](const StoreState& s) {
      accessible_patient(s, ctx, ctx.params[0]);
      for (const auto& [id, r] : s.reports) {
        if (r.patient_id == ctx.params[0]) out.push_back(to_json(r));
      }
    });
    return {200, out};
  }

  ApiResponse get_report(Context& ctx) {
    json out;
    store.read([&](const StoreState& s) { out = to_json(accessible_report(s, ctx, ctx.params[0])); });
    return {200, out};
  }

  ApiResponse choose(Context& ctx) {
    const json body = ctx.body();
    const std::string disease = string_field(body, "disease_id");
    DiagnosisReport updated;
    store.transact([&](const StoreState& s, Store::PendingEvents& ev) {
      updated = accessible_report(s, ctx, ctx.params[0]);
      if (updated.differential.find(disease) == nullptr) {
        throw ApiError(422, "not_in_differential", "disease " + disease + " is not in this report's differential");
      }
      if (engines.kb.find_disease(disease) == nullptr) {
        throw ApiError(422, "unknown_disease", "disease " + disease + " is not in the knowledge base");
      }
      updated.chosen_disease = disease;
      updated.plan = inference::recommend_treatments(engines.kb, engines.rules, disease);
      ev.emplace_back("report_chosen", json{{"report_id", updated.id},
                                            {"disease_id", disease},
                                            {"plan", inference::plan_to_json(*updated.plan)}});
    });
    return {200, to_json(updated)};
  }

  // -- knowledge ---------------------------------------------------------

  const kb::Disease& known_disease(const std::string& id) const {
    const kb::Disease* d = engines.kb.find_disease(id);
    if (d == nullptr) throw ApiError(404, "not_found", "unknown disease " + id);
    return *d;
  }

  ApiResponse list_diseases(Context&) {
    json out = json::array();
    for (const auto& [id, d] : engines.kb.diseases()) out.push_back(disease_summary(d));
    return {200, out};
  }

  ApiResponse get_disease(Context& ctx) {
    const auto& d = known_disease(ctx.params[0]);
    const auto fs = engines.kb.findings_of(d.id);
    json treatments = json::array();
    for (const auto& tid : engines.kb.treatments_of(d.id)) {
      const kb::TreatmentItem* t = engines.kb.find_treatment(tid);
      treatments.push_back({{"id", tid}, {"category", kb::to_string(t->category)}, {"label", t->label}});
    }
    json out = disease_summary(d);
    out["description"] = d.description;
    out["symptoms"] = finding_refs(engines.kb, fs, kb::FindingKind::symptom);
    out["causes"] = finding_refs(engines.kb, fs, kb::FindingKind::cause);
    out["treatments"] = std::move(treatments);
    return {200, out};
  }

  ApiResponse disease_treatments(Context& ctx) {
    const auto& d = known_disease(ctx.params[0]);
    json out = inference::plan_to_json(inference::recommend_treatments(engines.kb, engines.rules, d.id));
    out["disease_id"] = d.id;
    return {200, out};
  }

  // -- appointments ------------------------------------------------------

  bool can_see(const StoreState& s, const Account& account, const Appointment& a) {
    if (account.role == Role::practitioner) return true;
    auto p = s.patients.find(a.patient_id);
    return p != s.patients.end() && p->second.owner_account_id == account.id;
  }

  ApiResponse list_appointments(Context& ctx) {
    json out = json::array();
    store.read([&](const StoreState& s) {
      for (const auto& [id, a] : s.appointments) {
        if (can_see(s, ctx.account, a)) out.push_back(to_json(a));
      }
    });
    return {200, out};
  }

  ApiResponse create_appointment(Context& ctx) {
    static const std::regex kTimestamp(R"(\d{4}-\d{2}-\d{2}T\d{2}:\d{2}(:\d{2}(\.\d+)?)?(Z|[+-]\d{2}:\d{2})?)");
    const json body = ctx.body();
    Appointment a;
    a.patient_id = string_field(body, "patient_id");
    a.practitioner_id = string_field(body, "practitioner_id", false);
    if (a.practitioner_id.empty()) {
      if (ctx.account.role != Role::practitioner) bad_request("practitioner_id is required");
      a.practitioner_id = ctx.account.id;
    }
    a.scheduled_at = string_field(body, "scheduled_at");
    if (!std::regex_match(a.scheduled_at, kTimestamp)) bad_request("scheduled_at must be an ISO 8601 timestamp");
    a.id = new_id();
    a.status = AppointmentStatus::requested;
    a.created_at = now();
    store.transact([&](const StoreState& s, Store::PendingEvents& ev) {
      accessible_patient(s, ctx, a.patient_id);
      auto it = s.accounts.find(a.practitioner_id);
      if (it == s.accounts.end() || it->second.role != Role::practitioner) {
        throw ApiError(422, "unknown_practitioner", "practitioner does not exist");
      }
      ev.emplace_back("appointment_created", to_json(a));
    });
    return {201, to_json(a)};
  }

  ApiResponse appointment_status(Context& ctx) {
    require_practitioner(ctx);
    const json body = ctx.body();
    const auto status = parse_appointment_status(string_field(body, "status"));
    if (!status) bad_request("status must be requested, confirmed or completed");
    Appointment updated;
    store.transact([&](const StoreState& s, Store::PendingEvents& ev) {
      auto it = s.appointments.find(ctx.params[0]);
      if (it == s.appointments.end()) throw ApiError(404, "not_found", "unknown appointment " + ctx.params[0]);
      updated = it->second;
      if (static_cast<int>(*status) != static_cast<int>(updated.status) + 1) {
        throw ApiError(409, "invalid_transition", std::string("cannot move from ") + to_string(updated.status) +
                                                      " to " + to_string(*status));
      }
      updated.status = *status;
      ev.emplace_back("appointment_status",
                      json{{"appointment_id", updated.id}, {"status", to_string(*status)}});
    });
    return {200, to_json(updated)};
  }

  // -- stats -------------------------------------------------------------

  ApiResponse dashboard(Context& ctx) {
    require_practitioner(ctx);
    json genders = {{"female", 0}, {"male", 0}, {"other", 0}};
    json statuses = {{"requested", 0}, {"confirmed", 0}, {"completed", 0}};
    json diagnoses = json::object();
    json totals;
    store.read([&](const StoreState& s) {
      for (const auto& [id, p] : s.patients) genders[to_string(p.gender)] = genders[to_string(p.gender)].get<int>() + 1;
      for (const auto& [id, a] : s.appointments) {
        statuses[to_string(a.status)] = statuses[to_string(a.status)].get<int>() + 1;
      }
      for (const auto& [id, r] : s.reports) {
        const std::string key = r.chosen_disease             ? *r.chosen_disease
                                : !r.differential.entries.empty() ? r.differential.entries.front().disease_id
                                                                  : std::string("none");
        diagnoses[key] = diagnoses.value(key, 0) + 1;
      }
      totals = {{"patients", s.patients.size()}, {"appointments", s.appointments.size()}, {"reports", s.reports.size()}};
    });
    return {200,
            {{"patients_by_gender", genders},
             {"appointments_by_status", statuses},
             {"diagnoses_by_disease", diagnoses},
             {"totals", totals}}};
  }
};

Api::Api(Store& store, const Engines& engines, ApiOptions options)
    : impl_(std::make_unique<Impl>(store, engines, std::move(options))) {}

Api::~Api() = default;

ApiResponse Api::handle(const ApiRequest& request) {
  auto error = [](int status, const std::string& code, const std::string& message) {
    return ApiResponse{status, {{"error", {{"code", code}, {"message", message}}}}};
  };
  try {
    return impl_->dispatch(request);
  } catch (const ApiError& e) {
    return error(e.status(), e.code(), e.what());
  } catch (const Error& e) {
    return error(500, e.code(), e.what());
  } catch (const std::exception& e) {
    return error(500, "internal_error", e.what());
  }
}

}  // namespace unani::service
