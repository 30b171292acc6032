#include "unani/cli/commands.hpp"

#include <CLI11.hpp>
#include <pthread.h>
#include <signal.h>

#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

#include "unani/cli/loaders.hpp"
#include "unani/common/identifier.hpp"
#include "unani/ingest/records.hpp"
#include "unani/ingest/tagged_text.hpp"
#include "unani/knowledge/graph_export.hpp"
#include "unani/knowledge/kb_json.hpp"
#include "unani/learning/augment.hpp"
#include "unani/learning/decision_tree.hpp"
#include "unani/learning/text_classifier.hpp"
#include "unani/learning/text_match.hpp"
#include "unani/rules/canonicalize.hpp"
#include "unani/rules/parser.hpp"
#include "unani/rules/validate.hpp"
#include "unani/service/api.hpp"
#include "unani/service/config.hpp"
#include "unani/service/http_server.hpp"

namespace unani::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

/// Raised for bad flag combinations that CLI11 cannot express.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& message) : Error("usage", message) {}
};

struct Globals {
  std::string kb;
  std::vector<std::string> rules;
  std::string data_dir;
  bool json = false;
};

struct Io {
  std::ostream& out;
  std::ostream& err;
};

fs::path kb_path(const Globals& g) {
  if (!g.kb.empty()) return g.kb;
  if (const char* v = std::getenv("UNANI_KB"); v != nullptr && *v != '\0') return v;
  return default_kb_path();
}

std::vector<fs::path> rules_paths(const Globals& g) {
  if (!g.rules.empty()) return {g.rules.begin(), g.rules.end()};
  service::ServiceConfig cfg;
  cfg.rules_paths = default_rules_paths();
  return service::config_from_env(cfg).rules_paths;
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string joined(const std::vector<std::string>& items, const char* sep = ", ") {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += sep;
    out += s;
  }
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = collapse_whitespace(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// -- ingest ---------------------------------------------------------------

struct IngestOpts {
  std::vector<std::string> files;
  std::string out;
};

int cmd_ingest(const Globals& g, const IngestOpts& o, Io io) {
  std::vector<ingest::DiseaseRecord> records;
  std::size_t errors = 0;
  json error_list = json::array();
  for (const auto& f : o.files) {
    auto scan = ingest::scan_tagged_text({f, read_file(f)});
    for (const auto& w : scan.warnings) io.err << f << ": warning: " << w << "\n";
    for (const auto& e : scan.errors) {
      ++errors;
      io.err << e.source() << ":" << e.line() << ":" << e.column() << ": " << e.code() << ": " << e.what() << "\n";
      error_list.push_back({{"source", e.source()},
                            {"line", e.line()},
                            {"column", e.column()},
                            {"code", e.code()},
                            {"message", e.what()}});
    }
    for (auto& r : scan.records) records.push_back(std::move(r));
  }
  if (errors > 0) {
    if (g.json) io.out << json{{"ok", false}, {"errors", error_list}}.dump(2) << "\n";
    io.err << errors << " error(s); no knowledge base written\n";
    return 1;
  }
  const auto kb = ingest::records_to_kb(records);
  const std::string doc = kb::kb_to_document(kb);
  if (o.out.empty()) {
    if (!g.json) io.out << doc;
  } else {
    write_file(o.out, doc);
  }
  if (g.json) {
    json summary = {{"ok", true},
                    {"diseases", kb.diseases().size()},
                    {"nodes", kb.node_count()},
                    {"edges", kb.edge_count()}};
    if (o.out.empty()) summary["kb"] = kb::kb_to_json(kb);
    io.out << summary.dump(2) << "\n";
  } else {
    (o.out.empty() ? io.err : io.out) << kb.diseases().size() << " diseases, " << kb.node_count() << " nodes, "
                                      << kb.edge_count() << " edges\n";
  }
  return 0;
}

// -- validate ------------------------------------------------------------

struct ValidateOpts {
  std::string unknown_constant = "error";
};

void print_report(const ValidationReport& r, const std::string& what, Io io) {
  for (const auto& v : r.violations) {
    io.out << what << ": " << to_string(v.severity) << ": " << v.code << ": " << v.subject << ": " << v.message << "\n";
  }
}

int cmd_validate(const Globals& g, const ValidateOpts& o, Io io) {
  const auto kb = load_kb(kb_path(g));
  const auto rules = load_rules(rules_paths(g));
  rules::RulesetValidationOptions opts;
  opts.unknown_constant = o.unknown_constant == "warn" ? Severity::warning : Severity::error;
  const auto kb_report = kb::kb_validate(kb);
  const auto rule_report = rules::validate_ruleset(rules, kb, opts);
  const bool failed = kb_report.has_errors() || rule_report.has_errors();
  if (g.json) {
    io.out << json{{"ok", !failed}, {"kb", kb_report.to_json()}, {"rules", rule_report.to_json()}}.dump(2) << "\n";
  } else {
    print_report(kb_report, "kb", io);
    print_report(rule_report, "rules", io);
    io.out << (failed ? "invalid" : "ok") << ": " << kb.node_count() << " nodes, " << kb.edge_count() << " edges, "
           << rules.size() << " rules, " << kb_report.violations.size() + rule_report.violations.size()
           << " finding(s)\n";
  }
  return failed ? 1 : 0;
}

// -- export-graph --------------------------------------------------------

int cmd_export_graph(const Globals& g, const std::string& out, Io io) {
  const auto doc = kb::kb_export_graph(load_kb(kb_path(g))).to_json();
  const std::string text = doc.dump(2) + "\n";
  if (out.empty()) {
    io.out << text;
  } else {
    write_file(out, text);
    if (g.json) {
      io.out << json{{"nodes", doc["nodes"].size()}, {"edges", doc["edges"].size()}, {"out", out}}.dump(2) << "\n";
    } else {
      io.out << doc["nodes"].size() << " nodes, " << doc["edges"].size() << " edges written to " << out << "\n";
    }
  }
  return 0;
}

// -- rules check ---------------------------------------------------------

struct RulesCheckOpts {
  std::vector<std::string> files;
  bool canonical = false;
};

int cmd_rules_check(const Globals& g, const RulesCheckOpts& o, Io io) {
  std::vector<fs::path> paths(o.files.begin(), o.files.end());
  if (paths.empty()) paths = rules_paths(g);
  std::vector<rules::RuleAst> parsed;
  for (const auto& p : paths) {
    try {
      for (auto& r : rules::parse_ruleset(read_file(p), p.filename().string())) parsed.push_back(std::move(r));
    } catch (const rules::RuleError& e) {
      io.err << p.string() << ":" << e.what() << " [" << e.code() << "]\n";
      return 1;
    }
  }
  const auto canon = rules::canonicalize_ruleset(parsed);
  std::size_t diagnostic = 0;
  std::size_t flipped = 0;
  for (std::size_t i = 0; i < canon.size(); ++i) {
    if (canon[i].kind == rules::RuleKind::diagnostic) ++diagnostic;
    if (!(canon[i] == parsed[i])) ++flipped;
  }
  if (g.json) {
    json list = json::array();
    for (const auto& r : canon) {
      list.push_back({{"id", r.id}, {"kind", rules::to_string(r.kind)}, {"text", rules::format_rule(r)}});
    }
    io.out << json{{"rules", canon.size()},
                   {"diagnostic", diagnostic},
                   {"prescriptive", canon.size() - diagnostic},
                   {"canonicalized", flipped},
                   {"canonical", list}}
                  .dump(2)
           << "\n";
  } else if (o.canonical) {
    io.out << rules::format_ruleset(canon);
  } else {
    io.out << canon.size() << " rules: " << diagnostic << " diagnostic, " << canon.size() - diagnostic
           << " prescriptive (" << flipped << " rewritten to prescriptive form)\n";
  }
  return 0;
}

// -- diagnose ------------------------------------------------------------

struct DiagnoseOpts {
  std::string findings;
  std::string text;
  std::string engine = "rules";
  double threshold = 0.0;
  bool strict = false;
  bool explain = false;
  bool plan = false;
  std::string templates;
};

std::vector<std::string> load_templates(const std::string& path) {
  if (path.empty()) return learning::default_templates();
  return learning::parse_templates(read_file(path));
}

int cmd_diagnose(const Globals& g, const DiagnoseOpts& o, Io io) {
  if (o.findings.empty() == o.text.empty()) throw UsageError("give exactly one of --findings or --text");
  const auto kb = load_kb(kb_path(g));
  const auto rules = load_rules(rules_paths(g));
  const auto engine = *service::parse_engine(o.engine);

  std::set<std::string> findings;
  std::vector<std::string> unresolved;
  std::string text = o.text;
  if (!o.findings.empty()) {
    for (const auto& f : split_list(o.findings)) findings.insert(normalize_identifier(f));
    if (findings.empty()) throw UsageError("--findings is empty");
    if (text.empty()) {
      std::vector<std::string> labels;
      for (const auto& id : findings) {
        const kb::Finding* f = kb.find_finding(id);
        labels.push_back(f != nullptr ? f->label : id);
      }
      text = joined(labels);
    }
  } else {
    auto m = learning::match_findings(kb, o.text);
    findings = std::move(m.finding_ids);
    unresolved = std::move(m.unresolved);
  }

  inference::DiagnosisParams params;
  params.threshold = o.threshold;
  params.strict_vocabulary = o.strict;

  inference::Differential diff;
  std::vector<std::string> warnings;
  if (engine == service::EngineKind::rules) {
    if (findings.empty()) throw Error("no_usable_findings", "no known findings in the input");
    diff = inference::diagnose(kb, rules, findings, params);
    warnings = diff.warnings;
  } else {
    const auto engines = service::build_engines(kb, rules, load_templates(o.templates));
    if (engine == service::EngineKind::tree && findings.empty()) {
      throw Error("no_usable_findings", "no known findings in the input");
    }
    diff = service::run_engine(engines, engine, findings, text, params);
  }
  for (const auto& u : unresolved) warnings.push_back("unresolved: " + u);

  std::optional<inference::Explanation> explanation;
  if (o.explain && !diff.entries.empty() && engine == service::EngineKind::rules) {
    explanation = inference::explain(diff, rules, diff.entries.front().disease_id);
  }
  std::optional<inference::TreatmentPlan> plan;
  if (o.plan && !diff.entries.empty()) plan = inference::recommend_treatments(kb, rules, diff.entries.front().disease_id);

  if (g.json) {
    json doc = {{"engine", o.engine},
                {"findings", findings},
                {"differential", inference::differential_to_json(diff)},
                {"warnings", warnings}};
    if (explanation) doc["explanation"] = explanation->to_json();
    if (plan) doc["plan"] = inference::plan_to_json(*plan);
    io.out << doc.dump(2) << "\n";
    return 0;
  }

  io.out << "findings: " << joined({findings.begin(), findings.end()}) << "\n";
  for (const auto& w : warnings) io.out << "warning: " << w << "\n";
  if (diff.entries.empty()) {
    io.out << "no candidate diseases\n";
    return 0;
  }
  io.out << std::left << std::setw(6) << "rank" << std::setw(20) << "disease" << std::setw(10) << "score"
         << "fired rules\n";
  int rank = 0;
  for (const auto& e : diff.entries) {
    io.out << std::left << std::setw(6) << ++rank << std::setw(20) << e.disease_id << std::setw(10) << fixed(e.score)
           << (e.fired_rules.empty() ? "-" : joined(e.fired_rules)) << "\n";
  }
  if (explanation) io.out << "\n" << explanation->to_text();
  if (plan) {
    io.out << "\ntreatment plan for " << diff.entries.front().disease_id << ":\n";
    auto section = [&](const char* name, const std::vector<inference::PlanItem>& items) {
      std::vector<std::string> labels;
      for (const auto& i : items) labels.push_back(i.label);
      io.out << "  " << name << ": " << (labels.empty() ? "-" : joined(labels)) << "\n";
    };
    section("principles", plan->principle);
    section("regimental", plan->regimental);
    section("prevention", plan->prevention);
  }
  return 0;
}

// -- augment / train -----------------------------------------------------

learning::LabeledDataset source_dataset(const Globals& g, const std::string& csv) {
  if (!csv.empty()) return learning::dataset_from_csv(read_file(csv));
  return learning::kb_to_dataset(load_kb(kb_path(g)));
}

struct AugmentOpts {
  std::string dataset;
  int depth = 1;
  std::string out;
};

int cmd_augment(const Globals& g, const AugmentOpts& o, Io io) {
  const auto src = source_dataset(g, o.dataset);
  const auto ds = learning::augment_leave_one_out(src, o.depth);
  const auto added = ds.rows.size() - src.rows.size();
  if (!o.out.empty()) write_file(o.out, learning::dataset_to_csv(ds));
  if (g.json) {
    json doc = {{"source_rows", src.rows.size()}, {"augmented_rows", added}, {"features", ds.space.size()}};
    if (o.out.empty()) doc["csv"] = learning::dataset_to_csv(ds);
    io.out << doc.dump(2) << "\n";
  } else {
    io.out << added << " augmented rows\n";
  }
  return 0;
}

struct TrainOpts {
  std::string engine = "tree";
  std::string dataset;
  int depth = 1;
  int max_depth = -1;
  int min_samples_leaf = 1;
  std::string templates;
  std::string out;
};

int cmd_train(const Globals& g, const TrainOpts& o, Io io) {
  json model;
  json summary;
  std::string line;
  if (o.engine == "tree") {
    const auto ds = learning::augment_leave_one_out(source_dataset(g, o.dataset), o.depth);
    learning::TreeParams params;
    params.max_depth = o.max_depth < 0 ? static_cast<int>(ds.space.size()) : o.max_depth;
    params.min_samples_leaf = o.min_samples_leaf;
    const auto tree = learning::train_decision_tree(ds, params);
    std::size_t correct = 0;
    for (const auto& r : ds.rows) correct += learning::tree_predict(tree, r.vector).label == r.label ? 1 : 0;
    const double accuracy = static_cast<double>(correct) / static_cast<double>(ds.rows.size());
    model = learning::tree_to_json(tree);
    summary = {{"engine", "tree"},
               {"rows", ds.rows.size()},
               {"nodes", tree.nodes.size()},
               {"depth", tree.depth()},
               {"training_accuracy", accuracy}};
    line = "tree: " + std::to_string(ds.rows.size()) + " rows, " + std::to_string(tree.nodes.size()) + " nodes, depth " +
           std::to_string(tree.depth()) + ", training accuracy " + fixed(accuracy * 100.0, 2) + "%";
  } else {
    const auto corpus = learning::generate_prompts(load_kb(kb_path(g)), load_templates(o.templates));
    const auto tm = learning::train_text_classifier(corpus);
    model = learning::text_model_to_json(tm);
    summary = {{"engine", "text"},
               {"sentences", corpus.sentences.size()},
               {"vocabulary", tm.vocabulary.size()},
               {"labels", tm.labels.size()}};
    line = "text: " + std::to_string(corpus.sentences.size()) + " sentences, " + std::to_string(tm.vocabulary.size()) +
           " words, " + std::to_string(tm.labels.size()) + " labels";
  }
  if (!o.out.empty()) write_file(o.out, model.dump(2) + "\n");
  if (g.json) {
    if (o.out.empty()) summary["model"] = model;
    io.out << summary.dump(2) << "\n";
  } else {
    io.out << line << "\n";
  }
  return 0;
}

// -- serve ---------------------------------------------------------------

struct ServeOpts {
  std::string host;
  int port = -1;
  std::string templates;
};

int cmd_serve(const Globals& g, const ServeOpts& o, Io io) {
  // Block termination signals before any thread starts; a watcher thread
  // turns them into a clean shutdown.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  service::ServiceConfig cfg;
  cfg.kb_path = default_kb_path();
  cfg.rules_paths = default_rules_paths();
  cfg = service::config_from_env(cfg);
  if (!g.kb.empty()) cfg.kb_path = g.kb;
  if (!g.rules.empty()) cfg.rules_paths.assign(g.rules.begin(), g.rules.end());
  if (!g.data_dir.empty()) cfg.data_dir = g.data_dir;
  if (!o.host.empty()) cfg.host = o.host;
  if (o.port >= 0) cfg.port = o.port;
  if (!o.templates.empty()) cfg.templates_path = o.templates;

  const auto engines = service::build_engines(load_kb(cfg.kb_path), load_rules(cfg.rules_paths),
                                              load_templates(cfg.templates_path.string()));
  service::StoreOptions store_opts;
  store_opts.snapshot_every = cfg.snapshot_every;
  service::Store store(cfg.data_dir, store_opts);
  service::ApiOptions api_opts;
  api_opts.token_ttl_seconds = cfg.token_ttl_seconds;
  api_opts.password_iterations = cfg.password_iterations;
  service::Api api(store, engines, api_opts);
  service::HttpServer server(api, {cfg.cors_origin});
  const int port = server.bind(cfg.host, cfg.port);

  if (g.json) {
    io.out << json{{"listening", "http://" + cfg.host + ":" + std::to_string(port)}, {"port", port}}.dump() << "\n";
  } else {
    io.out << "listening on http://" << cfg.host << ":" << port << "\n";
  }
  io.out.flush();

  std::thread watcher([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  server.run();
  // run() also returns when the server fails; wake the watcher if so.
  pthread_kill(watcher.native_handle(), SIGTERM);
  watcher.join();
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unani Medicine clinical decision support toolkit", "unani"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--kb", g.kb, "Knowledge base JSON")->check(CLI::ExistingFile);
  app.add_option("--rules", g.rules, "Rule file (repeatable)")->check(CLI::ExistingFile)->allow_extra_args(false);
  app.add_option("--data-dir", g.data_dir, "Service data directory");
  app.add_flag("--json", g.json, "Machine-readable output");
  app.fallthrough();

  IngestOpts ingest_o;
  auto* ingest = app.add_subcommand("ingest", "Build a knowledge base from tagged text files");
  ingest->add_option("files", ingest_o.files, "Tagged text files")->required()->check(CLI::ExistingFile);
  ingest->add_option("--out,-o", ingest_o.out, "Output path (default: stdout)");

  ValidateOpts validate_o;
  auto* validate = app.add_subcommand("validate", "Check the knowledge base and ruleset");
  validate->add_option("--unknown-constant", validate_o.unknown_constant, "Severity of unknown rule constants")
      ->check(CLI::IsMember({"warn", "error"}));

  std::string graph_out;
  auto* export_graph = app.add_subcommand("export-graph", "Write the knowledge base as a node/edge graph");
  export_graph->add_option("--out,-o", graph_out, "Output path (default: stdout)");

  RulesCheckOpts rules_o;
  auto* rules_cmd = app.add_subcommand("rules", "Rule file tools");
  rules_cmd->require_subcommand(1);
  auto* rules_check = rules_cmd->add_subcommand("check", "Parse and canonicalize rule files");
  rules_check->add_option("files", rules_o.files, "Rule files (default: the shipped ruleset)")
      ->check(CLI::ExistingFile);
  rules_check->add_flag("--canonical", rules_o.canonical, "Print the canonical ruleset");

  DiagnoseOpts diag_o;
  auto* diagnose = app.add_subcommand("diagnose", "Rank candidate diseases");
  diagnose->add_option("--findings", diag_o.findings, "Comma-separated finding ids");
  diagnose->add_option("--text", diag_o.text, "Free-text symptom description");
  diagnose->add_option("--engine", diag_o.engine, "rules, tree or text")
      ->check(CLI::IsMember({"rules", "tree", "text"}));
  diagnose->add_option("--threshold", diag_o.threshold, "Minimum score")->check(CLI::Range(0.0, 1.0));
  diagnose->add_flag("--strict", diag_o.strict, "Fail on unknown finding ids");
  diagnose->add_flag("--explain", diag_o.explain, "Explain the top entry");
  diagnose->add_flag("--plan", diag_o.plan, "Show treatments for the top entry");
  diagnose->add_option("--templates", diag_o.templates, "Prompt templates for the text engine")
      ->check(CLI::ExistingFile);

  AugmentOpts aug_o;
  auto* augment = app.add_subcommand("augment", "Leave-one-out augmentation");
  augment->add_option("--dataset", aug_o.dataset, "Dataset CSV (default: derived from the KB)")
      ->check(CLI::ExistingFile);
  augment->add_option("--depth", aug_o.depth, "Number of removals")->check(CLI::NonNegativeNumber);
  augment->add_option("--out,-o", aug_o.out, "Write the augmented dataset CSV");

  TrainOpts train_o;
  auto* train = app.add_subcommand("train", "Train a decision tree or text model");
  train->add_option("--engine", train_o.engine, "tree or text")->check(CLI::IsMember({"tree", "text"}));
  train->add_option("--dataset", train_o.dataset, "Dataset CSV for the tree")->check(CLI::ExistingFile);
  train->add_option("--depth", train_o.depth, "Augmentation depth")->check(CLI::NonNegativeNumber);
  train->add_option("--max-depth", train_o.max_depth, "Tree depth cap (default: number of features)");
  train->add_option("--min-samples-leaf", train_o.min_samples_leaf, "Minimum rows per leaf")
      ->check(CLI::PositiveNumber);
  train->add_option("--templates", train_o.templates, "Prompt templates for the text model")
      ->check(CLI::ExistingFile);
  train->add_option("--out,-o", train_o.out, "Write the model JSON");

  ServeOpts serve_o;
  auto* serve = app.add_subcommand("serve", "Run the REST service");
  serve->add_option("--host", serve_o.host, "Bind address");
  serve->add_option("--port", serve_o.port, "Port (0 picks a free one)")->check(CLI::Range(0, 65535));
  serve->add_option("--templates", serve_o.templates, "Prompt templates for the text engine")
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  Io io{out, err};
  try {
    if (*ingest) return cmd_ingest(g, ingest_o, io);
    if (*validate) return cmd_validate(g, validate_o, io);
    if (*export_graph) return cmd_export_graph(g, graph_out, io);
    if (*rules_check) return cmd_rules_check(g, rules_o, io);
    if (*diagnose) return cmd_diagnose(g, diag_o, io);
    if (*augment) return cmd_augment(g, aug_o, io);
    if (*train) return cmd_train(g, train_o, io);
    if (*serve) return cmd_serve(g, serve_o, io);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.code() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace unani::cli
