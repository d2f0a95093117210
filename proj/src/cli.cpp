#include "sreq/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "sreq/config.hpp"
#include "sreq/docgen.hpp"
#include "sreq/inference.hpp"
#include "sreq/parser.hpp"
#include "sreq/report.hpp"
#include "sreq/resolve.hpp"
#include "sreq/solver.hpp"
#include "sreq/trace.hpp"
#include "sreq/vcgen.hpp"
#include "sreq/workspace.hpp"

namespace fs = std::filesystem;

namespace sreq {

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

struct Context {
  std::string command;
  std::vector<std::string> names;
  std::shared_ptr<const Project> project;
  ProjectConfig config;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  bool timing = false;
  bool markdown = false;
  bool with_verdicts = false;
  std::ostringstream text;
  Report report;
  std::ostream* err = nullptr;
};

bool is_source(const std::string& word) {
  return fs::path(word).extension() == ".sreq" || fs::is_regular_file(word);
}

bool write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  f << content;
  return static_cast<bool>(f);
}

// Name, or the configured requirement class when the name was left out.
std::string class_name(Context& ctx, std::size_t index) {
  if (index < ctx.names.size()) return ctx.names[index];
  return ctx.config.requirement_class;
}

std::string excerpt(const std::string& s, std::size_t width = 72) {
  if (s.size() <= width) return s;
  return s.substr(0, width - 3) + "...";
}

std::string indent(const std::string& block, const std::string& prefix) {
  std::istringstream in(block);
  std::string out;
  for (std::string line; std::getline(in, line);) out += prefix + line + "\n";
  return out;
}

void print_outcomes(Context& ctx, const std::vector<VerificationOutcome>& outcomes) {
  std::size_t width = 0;
  for (const auto& o : outcomes) width = std::max(width, o.name.size());
  std::size_t counts[4] = {0, 0, 0, 0};
  nlohmann::json rows = nlohmann::json::array();
  nlohmann::json times = nlohmann::json::object();
  for (const auto& o : outcomes) {
    ++counts[static_cast<int>(o.status)];
    ctx.text << "  " << o.name << std::string(width - o.name.size() + 2, ' ') << to_string(o.status);
    ctx.text << std::string(13 - to_string(o.status).size(), ' ') << excerpt(o.comment);
    if (ctx.timing) ctx.text << "  (" << o.elapsed_ms << " ms)";
    ctx.text << "\n";
    if (o.status != Status::Proved && !o.detail.empty()) ctx.text << indent(o.detail, "      ");
    for (const auto& n : o.notes) ctx.text << "      note: " << n << "\n";
    rows.push_back(outcome_json(o));
    times[o.name] = o.elapsed_ms;
  }
  ctx.text << counts[0] << " proved, " << counts[1] << " failed, " << counts[2] << " unsupported, " << counts[3]
           << " skipped\n";
  ctx.report.payload["outcomes"] = rows;
  ctx.report.payload["summary"] = {
      {"proved", counts[0]}, {"failed", counts[1]}, {"unsupported", counts[2]}, {"skipped", counts[3]}};
  if (ctx.timing) (*ctx.report.timing)["outcomes"] = times;
}

bool all_passed(const std::vector<VerificationOutcome>& outcomes) {
  for (const auto& o : outcomes) {
    if (o.status == Status::Failed || o.status == Status::Unsupported) return false;
  }
  return true;
}

const RequirementClass* requirement_class(Context& ctx, const std::string& name) {
  if (name.empty()) {
    *ctx.err << "error: no requirement class given\n";
    return nullptr;
  }
  const RequirementClass* rc = ctx.project->find_requirement_class(name);
  if (!rc) *ctx.err << "error: unknown requirement class '" << name << "'\n";
  return rc;
}

int cmd_check(Context& ctx) {
  const Project& p = *ctx.project;
  ctx.text << "ok: " << p.classes.size() << " contracted classes, " << p.requirement_classes.size()
           << " requirement classes, " << p.driver_count() << " drivers\n";
  ctx.report.payload = {{"classes", p.classes.size()},
                        {"requirement_classes", p.requirement_classes.size()},
                        {"drivers", p.driver_count()},
                        {"diagnostics", nlohmann::json::array()}};
  return kOk;
}

int cmd_verify(Context& ctx) {
  const RequirementClass* rc = requirement_class(ctx, class_name(ctx, 0));
  if (!rc) return kUsage;
  auto outcomes = verify_requirement_class(*rc, *ctx.project, {ctx.seed, ctx.jobs});
  ctx.text << rc->name << ": " << outcomes.size() << " drivers\n";
  ctx.report.payload["target"] = rc->name;
  print_outcomes(ctx, outcomes);
  return all_passed(outcomes) ? kOk : kFailure;
}

int cmd_verify_impl(Context& ctx) {
  if (ctx.names.empty()) {
    *ctx.err << "error: no class given\n";
    return kUsage;
  }
  const ContractedClass* cls = ctx.project->find_class(ctx.names[0]);
  if (!cls) {
    *ctx.err << "error: unknown class '" << ctx.names[0] << "'\n";
    return kUsage;
  }
  auto outcomes = verify_class(*cls, *ctx.project, {ctx.seed, ctx.jobs});
  ctx.text << cls->name << ": " << outcomes.size() << " obligations\n";
  ctx.report.payload["target"] = cls->name;
  print_outcomes(ctx, outcomes);
  return all_passed(outcomes) ? kOk : kFailure;
}

int cmd_infer(Context& ctx) {
  std::string cls;
  std::string target;
  if (ctx.names.size() >= 2) {
    cls = ctx.names[0];
    target = ctx.names[1];
  } else if (ctx.names.size() == 1 && !ctx.config.requirement_class.empty()) {
    cls = ctx.config.requirement_class;
    target = ctx.names[0];
  } else {
    *ctx.err << "error: usage: infer REQUIREMENT_CLASS COMMAND\n";
    return kUsage;
  }
  const RequirementClass* rc = requirement_class(ctx, cls);
  if (!rc) return kUsage;
  InferenceReport r;
  try {
    r = infer_contract(*rc, *ctx.project, target);
  } catch (const DiagnosticError& e) {
    *ctx.err << "error: " << e.diagnostic().message << "\n";
    return kUsage;
  }
  for (const auto& a : r.assertions) ctx.text << a.rendering << "\n";
  for (const auto& f : r.failures) {
    for (const auto& reason : f.reasons) {
      *ctx.err << f.owner << "." << f.driver << ": " << to_string(f.kind) << ": " << reason << "\n";
    }
  }
  for (const auto& n : r.notes) *ctx.err << "note: " << n << "\n";
  ctx.report.payload = inference_json(r);
  return r.failures.empty() ? kOk : kFailure;
}

// Latest verdict of every driver in the project.
std::map<DriverRef, Status> all_verdicts(Context& ctx) {
  std::map<DriverRef, Status> out;
  for (const auto& rc : ctx.project->requirement_classes) {
    for (const auto& o : verify_requirement_class(rc, *ctx.project, {ctx.seed, ctx.jobs})) {
      auto dot = o.owner.rfind('.');
      out.emplace(DriverRef{o.owner.substr(0, dot), o.name}, o.status);
    }
  }
  return out;
}

int cmd_trace(Context& ctx) {
  const std::string direction = ctx.names.empty() ? "" : ctx.names[0];
  const TraceMatrix m = build_matrix(*ctx.project);
  ctx.report.payload["direction"] = direction;
  if (direction == "matrix") {
    for (const auto& [d, fs] : m.down) {
      ctx.text << d.str() << ":";
      for (const auto& f : fs) ctx.text << " " << f.str();
      ctx.text << "\n";
    }
    ctx.report.payload["matrix"] = matrix_json(m);
    return kOk;
  }
  if ((direction != "up" && direction != "down") || ctx.names.size() != 2) {
    *ctx.err << "error: usage: trace up CLASS.feature | trace down [OWNER.]driver | trace matrix\n";
    return kUsage;
  }
  const std::string& name = ctx.names[1];
  ctx.report.payload["name"] = name;
  nlohmann::json rows = nlohmann::json::array();
  if (direction == "up") {
    std::vector<ImpactRow> hits;
    try {
      hits = impact(*ctx.project, name, ctx.with_verdicts ? all_verdicts(ctx) : std::map<DriverRef, Status>{});
    } catch (const UnknownFeature& e) {
      *ctx.err << "error: UnknownFeature: " << e.what() << "\n";
      return kUsage;
    }
    for (const auto& h : hits) {
      ctx.text << h.driver.str();
      nlohmann::json row{{"driver", h.driver.str()}};
      if (h.verdict) {
        ctx.text << "  " << to_string(*h.verdict);
        row["verdict"] = to_string(*h.verdict);
      }
      ctx.text << "\n";
      rows.push_back(row);
    }
  } else {
    std::string owner;
    std::string driver = name;
    if (auto dot = name.rfind('.'); dot != std::string::npos) {
      owner = name.substr(0, dot);
      driver = name.substr(dot + 1);
    }
    std::vector<std::pair<DriverRef, std::set<FeatureRef>>> hits;
    for (const auto& [d, fs] : m.down) {
      if (d.name == driver && (owner.empty() || d.owner == owner)) hits.emplace_back(d, fs);
    }
    if (hits.empty()) {
      *ctx.err << "error: unknown driver '" << name << "'\n";
      return kUsage;
    }
    for (const auto& [d, fs] : hits) {
      if (hits.size() > 1) ctx.text << d.str() << ":\n";
      nlohmann::json features = nlohmann::json::array();
      for (const auto& f : fs) {
        ctx.text << (hits.size() > 1 ? "  " : "") << f.str() << "\n";
        features.push_back(f.str());
      }
      rows.push_back({{"driver", d.str()}, {"features", features}});
    }
  }
  ctx.report.payload["rows"] = rows;
  return kOk;
}

int cmd_doc(Context& ctx) {
  const RequirementClass* rc = requirement_class(ctx, class_name(ctx, 0));
  if (!rc) return kUsage;
  std::map<std::string, Status> verdicts;
  if (ctx.with_verdicts) {
    for (const auto& o : verify_requirement_class(*rc, *ctx.project, {ctx.seed, ctx.jobs})) {
      verdicts[o.name] = o.status;
    }
  }
  const RequirementsDocument doc = build_document(*rc, *ctx.project, verdicts);
  for (const auto& w : doc.warnings) *ctx.err << "warning: " << w << "\n";
  ctx.text << render_document(doc, ctx.markdown ? DocFormat::Markdown : DocFormat::Text);
  ctx.report.payload = document_json(doc);
  return kOk;
}

int cmd_export_smt(Context& ctx) {
  if (ctx.names.size() != 1) {
    *ctx.err << "error: usage: export-smt [OWNER.]driver\n";
    return kUsage;
  }
  const std::string& name = ctx.names[0];
  std::string owner;
  std::string driver = name;
  if (auto dot = name.rfind('.'); dot != std::string::npos) {
    owner = name.substr(0, dot);
    driver = name.substr(dot + 1);
  }
  std::map<DriverRef, SpecificationDriver> found;
  for (const auto& rc : ctx.project->requirement_classes) {
    for (auto& d : flatten_requirements(*ctx.project, rc)) {
      if (d.name == driver && (owner.empty() || d.owner == owner)) found.emplace(DriverRef{d.owner, d.name}, d);
    }
  }
  if (found.size() != 1) {
    *ctx.err << "error: " << (found.empty() ? "unknown" : "ambiguous") << " driver '" << name << "'\n";
    return kUsage;
  }
  const auto& [ref, d] = *found.begin();
  Obligation ob;
  try {
    ob = driver_obligation(d, *ctx.project);
  } catch (const std::exception& e) {
    *ctx.err << "error: " << e.what() << "\n";
    return kUsage;
  }
  const std::string script = to_smtlib(
      Formula::negate(ob.formula()),
      "negated obligation of " + ref.str() + "\nunsat: the requirement follows from the contracts\nsat: it does not");
  ctx.text << script;
  ctx.report.payload = {{"driver", ref.str()}, {"script", script}};
  return kOk;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Seamless requirements: verify, infer, trace and document contracted requirements"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  std::uint64_t seed = 0;
  unsigned jobs = 0;
  std::string format = "text";
  std::string output;
  bool timing = false;
  app.add_option("--config", config_path, "Key-value project configuration file");
  auto* seed_opt = app.add_option("--seed", seed, "Solver decision-order seed");
  auto* jobs_opt = app.add_option("--jobs", jobs, "Parallel obligations (default: available cores)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--output", output, "Write the output to this file instead of standard output");
  app.add_flag("--timing", timing, "Include elapsed times");

  std::vector<std::string> words;
  bool markdown = false;
  bool with_verdicts = false;
  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"check", "Parse and resolve: check FILES..."},
      {"verify", "Verify a requirement class: verify CLASS FILES..."},
      {"verify-impl", "Verify implementations against contracts: verify-impl CLASS FILES..."},
      {"infer", "Infer postcondition assertions: infer CLASS COMMAND FILES..."},
      {"trace", "Traceability: trace up CLASS.feature | down DRIVER | matrix, then FILES..."},
      {"doc", "Requirements document: doc CLASS FILES..."},
      {"export-smt", "SMT-LIB script of a driver obligation: export-smt DRIVER FILES..."},
  };
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("args", words, "Names and source files");
    if (std::string(s.name) == "doc") sub->add_flag("--markdown", markdown, "Markdown instead of plain text");
    if (std::string(s.name) == "doc" || std::string(s.name) == "trace") {
      sub->add_flag("--with-verdicts", with_verdicts, "Annotate with verification verdicts");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  Context ctx;
  ctx.err = &err;
  ctx.command = app.get_subcommands().front()->get_name();
  ctx.timing = timing;
  ctx.markdown = markdown;
  ctx.with_verdicts = with_verdicts;
  ctx.report.command = ctx.command;
  if (timing) ctx.report.timing = nlohmann::json::object();

  std::vector<fs::path> sources;
  if (!config_path.empty()) {
    std::ifstream f(config_path, std::ios::binary);
    if (!f) {
      err << "error: cannot read config '" << config_path << "'\n";
      return kIo;
    }
    std::stringstream buffer;
    buffer << f.rdbuf();
    try {
      ctx.config = parse_config(buffer.str(), fs::path(config_path).parent_path());
    } catch (const ConfigError& e) {
      err << "error: " << config_path << ": " << e.what() << "\n";
      return kUsage;
    }
    sources = expand_sources(ctx.config);
  }
  for (const auto& w : words) {
    if (is_source(w)) {
      sources.emplace_back(w);
    } else {
      ctx.names.push_back(w);
    }
  }
  if (sources.empty()) {
    err << "error: no source files given\n";
    return kUsage;
  }
  if (ctx.command == "check" && !ctx.names.empty()) {
    err << "error: not a source file: '" << ctx.names.front() << "'\n";
    return kIo;
  }
  ctx.seed = seed_opt->count() ? seed : ctx.config.seed.value_or(0);
  ctx.jobs = jobs_opt->count() ? jobs : ctx.config.jobs.value_or(std::max(1u, std::thread::hardware_concurrency()));
  if (ctx.jobs == 0) ctx.jobs = 1;

  const auto start = std::chrono::steady_clock::now();
  int code = kOk;
  try {
    Resolution r = load_sources(sources);
    if (!r.ok()) {
      nlohmann::json diagnostics = nlohmann::json::array();
      for (const auto& d : r.diagnostics) {
        err << d.str() << "\n";
        diagnostics.push_back(diagnostic_json(d));
      }
      if (ctx.command != "check") return kUsage;
      ctx.report.payload = {{"diagnostics", diagnostics}};
      code = kUsage;
    } else {
      ctx.project = r.project;
      if (ctx.command == "check") code = cmd_check(ctx);
      else if (ctx.command == "verify") code = cmd_verify(ctx);
      else if (ctx.command == "verify-impl") code = cmd_verify_impl(ctx);
      else if (ctx.command == "infer") code = cmd_infer(ctx);
      else if (ctx.command == "trace") code = cmd_trace(ctx);
      else if (ctx.command == "doc") code = cmd_doc(ctx);
      else code = cmd_export_smt(ctx);
      if (code == kUsage) return code;
    }
  } catch (const DiagnosticError& e) {
    err << e.diagnostic().str() << "\n";
    return e.diagnostic().kind == DiagnosticKind::IoError ? kIo : kUsage;
  }
  if (ctx.timing) {
    (*ctx.report.timing)["total_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }

  const std::string primary = format == "structured" ? render_report(ctx.report) : ctx.text.str();
  if (!output.empty()) {
    if (!write_file(output, primary)) {
      err << "error: cannot write '" << output << "'\n";
      return kIo;
    }
  } else {
    out << primary;
  }
  if (!ctx.config.report.empty()) {
    const fs::path path = ctx.config.base / ctx.config.report;
    if (!write_file(path, render_report(ctx.report))) {
      err << "error: cannot write report '" << path.string() << "'\n";
      return kIo;
    }
  }
  return code;
}

}  // namespace sreq
