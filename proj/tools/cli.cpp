#include "cli.hpp"

#include "mwp/analysis.hpp"
#include "mwp/corpus.hpp"
#include "mwp/error.hpp"
#include "mwp/heads.hpp"
#include "mwp/labels.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>

namespace mwp::cli {

using nlohmann::json;
namespace fs = std::filesystem;

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Filter: return "filter";
    case Command::Map: return "map";
    case Command::Labels: return "labels";
    case Command::Eval: return "eval";
    case Command::Stats: return "stats";
    case Command::Qt: return "qt";
    case Command::GradCheck: return "gradcheck";
  }
  return "?";
}

std::string operator_bin(std::size_t operator_count) {
  return operator_count > 5 ? ">5" : std::to_string(operator_count);
}

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Context {
 public:
  Context(const RunConfig& config, std::ostream& log) : config_(config), log_(log) {}

  const RunConfig& config() const { return config_; }
  std::ostream& log() { return log_; }

  json header(std::string_view extra_key = {}, std::string_view extra_value = {}) const {
    json h = {{"command", to_string(config_.command)}, {"seed", config_.seed}, {"k", config_.k}};
    if (!extra_key.empty()) h[std::string(extra_key)] = extra_value;
    return h;
  }

  std::ofstream open_output(const std::string& name) const {
    const fs::path path = fs::path(config_.output_dir) / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + path.string());
    return out;
  }

  void write_json(const std::string& name, const json& j) const {
    auto out = open_output(name);
    out << j.dump(2) << '\n';
  }

  Schema schema() const {
    if (!config_.schema_path) return Schema{};
    std::ifstream in(*config_.schema_path);
    if (!in) throw ConfigError("cannot read schema " + *config_.schema_path);
    try {
      return Schema::from_json(json::parse(in));
    } catch (const json::exception& e) {
      throw ConfigError(std::string("invalid schema: ") + e.what());
    } catch (const Error& e) {
      throw ConfigError(std::string("invalid schema: ") + e.what());
    }
  }

  IngestResult read_records(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read input " + path);
    IngestResult r = ingest(in, schema());
    for (const auto& e : r.errors) {
      log_ << "skip " << path << ":" << e.line << ": " << e.message << '\n';
      ++hard_failures_;
    }
    return r;
  }

  FilterLimits limits() const {
    FilterLimits l;
    l.max_text_tokens = config_.max_text_tokens;
    l.max_equation_tokens = config_.max_eq_tokens;
    l.max_quantities = config_.k;
    l.tolerance = config_.tolerance;
    l.allowed_constants.clear();
    for (const auto& c : config_.constants) {
      try {
        l.allowed_constants.push_back(parse_answer(c).value);
      } catch (const Error&) {
        throw ConfigError("invalid constant '" + c + "'");
      }
    }
    return l;
  }

  void skip(const std::string& id, const std::string& reason) {
    log_ << "skip " << id << ": " << reason << '\n';
    ++hard_failures_;
  }

  int exit_code() const { return config_.strict && hard_failures_ > 0 ? kExitRecordFailure : kExitOk; }

 private:
  const RunConfig& config_;
  std::ostream& log_;
  std::size_t hard_failures_ = 0;
};

void write_jsonl(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

json record_json(const MwpRecord& r) {
  json j = {{"id", r.id}, {"text", r.text}, {"origin", to_string(r.origin)}};
  j["equation"] = r.equation ? json(*r.equation) : json(nullptr);
  j["answer"] = r.answer ? json(*r.answer) : json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------

int run_filter(Context& ctx) {
  const auto& cfg = ctx.config();
  IngestResult in = ctx.read_records(cfg.input);
  const FilterLimits limits = ctx.limits();

  DedupIndex dedup;
  if (cfg.dedup_ref) {
    IngestResult ref = ctx.read_records(*cfg.dedup_ref);
    for (const auto& r : ref.records) dedup.insert(dedup_key(r));
  }

  const Partition p = partition(in.records, limits, dedup, cfg.threads);

  auto clean = ctx.open_output("clean.jsonl");
  auto unsolvable = ctx.open_output("unsolvable.jsonl");
  auto rejected = ctx.open_output("rejected.jsonl");
  write_jsonl(clean, {{"_header", ctx.header("split", "clean")}});
  write_jsonl(unsolvable, {{"_header", ctx.header("split", "unsolvable")}});
  write_jsonl(rejected, {{"_header", ctx.header("split", "rejected")}});

  for (std::size_t i = 0; i < in.records.size(); ++i) {
    const FilterVerdict& v = p.verdicts[i];
    json line = in.sources[i];
    switch (v.disposition) {
      case Disposition::Clean: write_jsonl(clean, line); break;
      case Disposition::Unsolvable:
        line["_verdict"] = v.to_json();
        write_jsonl(unsolvable, line);
        break;
      case Disposition::Rejected:
        line["_verdict"] = v.to_json();
        write_jsonl(rejected, line);
        break;
    }
  }

  json report = p.report.to_json();
  report["header"] = ctx.header();
  report["input_records"] = in.records.size();
  json errors = json::array();
  for (const auto& e : in.errors) errors.push_back({{"line", e.line}, {"message", e.message}});
  report["ingest_errors"] = std::move(errors);
  report["limits"] = {{"max_text_tokens", limits.max_text_tokens},
                      {"max_equation_tokens", limits.max_equation_tokens},
                      {"constants", cfg.constants},
                      {"tolerance", limits.tolerance}};
  ctx.write_json("filter_report.json", report);

  if (!cfg.quiet) {
    auto& log = ctx.log();
    log << "rule                  count\n";
    for (const auto& [rule, count] : p.report.rule_counts)
      log << std::left << std::setw(22) << to_string(rule) << count << '\n';
    log << "clean " << p.report.clean_count << "  unsolvable " << p.report.unsolvable_count << "  rejected "
        << p.report.rejected_count << "  total " << p.report.total() << '\n';
  }
  return ctx.exit_code();
}

int run_map(Context& ctx) {
  IngestResult in = ctx.read_records(ctx.config().input);
  const AnalysisOptions options = ctx.limits().analysis_options();
  auto out = ctx.open_output("mapped.jsonl");
  write_jsonl(out, {{"_header", ctx.header()}});
  for (const auto& r : in.records) {
    const std::vector<NumberToken> quantities = recognize_numbers(r.tokens);
    try {
      MappedProblem m = map_numbers(r.tokens, quantities, options.k);
      json line = record_json(r);
      line.update(to_json(m));
      write_jsonl(out, line);
    } catch (const Error& e) {
      ctx.skip(r.id, e.what());
    }
  }
  return ctx.exit_code();
}

int run_labels(Context& ctx) {
  const auto& cfg = ctx.config();
  IngestResult in = ctx.read_records(cfg.input);
  const AnalysisOptions options = ctx.limits().analysis_options();

  std::vector<Analysis> analyses;
  analyses.reserve(in.records.size());
  std::vector<std::vector<std::string>> token_lists;
  for (const auto& r : in.records) {
    analyses.push_back(analyze(r, options));
    token_lists.push_back(analyses.back().placeholder_tokens);
  }
  const std::vector<std::string> vocab = build_replacement_vocab(token_lists);

  auto out = ctx.open_output("labels.jsonl");
  write_jsonl(out, {{"_header", ctx.header()}});
  for (std::size_t i = 0; i < in.records.size(); ++i) {
    write_jsonl(out, emit_label_bundle(in.records[i], analyses[i], cfg.seed, vocab).to_json());
  }
  return ctx.exit_code();
}

int run_eval(Context& ctx) {
  IngestResult in = ctx.read_records(ctx.config().input);
  const AnalysisOptions options = ctx.limits().analysis_options();
  auto out = ctx.open_output("eval.jsonl");
  write_jsonl(out, {{"_header", ctx.header()}});
  for (const auto& r : in.records) {
    if (!r.equation) {
      ctx.skip(r.id, "no equation");
      continue;
    }
    const Analysis a = analyze(r, options);
    json line = {{"id", r.id}};
    if (!a.tree) {
      line["value"] = nullptr;
      line["matches_answer"] = nullptr;
      line["error"] = a.parse_error;
      ctx.skip(r.id, a.parse_error);
    } else {
      std::vector<ExactValue> bindings;
      for (const auto& q : a.quantities) bindings.push_back(q.value);
      try {
        const EvalValue v = evaluate(*a.tree, bindings);
        line["value"] = v.render();
        line["exact"] = v.exact();
      } catch (const Error& e) {
        line["value"] = nullptr;
        line["error"] = std::string(errc_name(e.code())) + ": " + e.what();
      }
      line["matches_answer"] = a.check ? json(a.check->matches) : json(nullptr);
    }
    write_jsonl(out, line);
  }
  return ctx.exit_code();
}

int run_stats(Context& ctx) {
  IngestResult in = ctx.read_records(ctx.config().input);
  std::map<std::string, std::size_t> ops;
  for (const char* bin : {"0", "1", "2", "3", "4", "5", ">5"}) ops[bin] = 0;
  std::map<std::size_t, std::size_t> quantities;
  std::size_t parsed = 0;
  std::size_t unparsed = 0;
  for (const auto& r : in.records) {
    ++quantities[recognize_numbers(r.tokens).size()];
    if (!r.equation) {
      ++unparsed;
      continue;
    }
    try {
      const EquationTree t = parse_equation(*r.equation);
      ++ops[operator_bin(t.operator_count())];
      ++parsed;
    } catch (const Error& e) {
      ++unparsed;
      ctx.skip(r.id, e.what());
    }
  }
  json q = json::object();
  for (const auto& [n, count] : quantities) q[std::to_string(n)] = count;
  json ops_json = json::object();
  for (const char* bin : {"0", "1", "2", "3", "4", "5", ">5"}) ops_json[bin] = ops[bin];
  const json report = {{"header", ctx.header()},
                       {"records", in.records.size()},
                       {"equations_parsed", parsed},
                       {"equations_missing_or_unparsed", unparsed},
                       {"operator_count", ops_json},
                       {"quantity_count", q}};
  ctx.write_json("stats.json", report);
  if (!ctx.config().quiet) {
    auto& log = ctx.log();
    log << "#op  #P\n";
    for (const char* bin : {"0", "1", "2", "3", "4", "5", ">5"})
      log << std::left << std::setw(5) << bin << ops[bin] << '\n';
  }
  return ctx.exit_code();
}

int run_qt(Context& ctx) {
  IngestResult in = ctx.read_records(ctx.config().input);
  const AnalysisOptions options = ctx.limits().analysis_options();
  auto out = ctx.open_output("qt.jsonl");
  write_jsonl(out, {{"_header", ctx.header()}});
  for (const auto& r : in.records) {
    const Analysis a = analyze(r, options);
    json line = {{"id", r.id}, {"qt", nullptr}};
    if (!a.mapped) {
      line["reason"] = a.mapping_error;
    } else if (!a.resolved) {
      line["reason"] = r.equation ? (a.tree ? a.resolve_error : a.parse_error) : "no equation";
    } else if (auto tags = quantity_tagging_targets(*a.resolved, *a.mapped)) {
      json arr = json::array();
      for (QuantityTag t : *tags) arr.push_back(to_string(t));
      line["qt"] = std::move(arr);
    } else {
      line["reason"] = "equation uses operators other than + and -, or repeats a quantity";
    }
    write_jsonl(out, line);
  }
  return ctx.exit_code();
}

int run_gradcheck(Context& ctx) {
  const auto& cfg = ctx.config();
  constexpr double kStep = 1e-6;
  constexpr double kThreshold = 1e-5;
  json tasks = json::array();
  bool pass = true;
  for (HeadTask task : kHeadTasks) {
    GradCheckReport worst;
    worst.task = task;
    for (std::size_t c = 0; c < cfg.configs; ++c) {
      const std::uint64_t seed = derive_record_seed(cfg.seed, std::string(to_string(task)) + "#" + std::to_string(c));
      const HeadConfig hc = random_head_config(task, cfg.dim, cfg.hidden, 12, cfg.instances, seed);
      GradCheckReport r = grad_check(task, hc.params, hc.z, hc.instances, kStep);
      if (c == 0 || r.max_rel_err > worst.max_rel_err) {
        worst = r;
        worst.argmax_coord = "config " + std::to_string(c) + " " + r.argmax_coord;
      }
    }
    pass = pass && worst.max_rel_err < kThreshold;
    tasks.push_back(worst.to_json());
    if (!cfg.quiet) {
      ctx.log() << std::left << std::setw(10) << to_string(task) << " max_rel_err " << worst.max_rel_err << '\n';
    }
  }
  const json report = {{"header", ctx.header()},
                       {"dim", cfg.dim},
                       {"hidden", cfg.hidden},
                       {"configs", cfg.configs},
                       {"instances", cfg.instances},
                       {"step", kStep},
                       {"threshold", kThreshold},
                       {"pass", pass},
                       {"tasks", std::move(tasks)}};
  ctx.write_json("gradcheck.json", report);
  return pass ? ctx.exit_code() : kExitRecordFailure;
}

}  // namespace

int run(const RunConfig& config, std::ostream& log) {
  Context ctx(config, log);
  try {
    if (config.k <= 0) throw ConfigError("--k must be positive");
    if (config.command != Command::GradCheck && config.input.empty()) throw ConfigError("--input is required");
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + config.output_dir);

    switch (config.command) {
      case Command::Filter: return run_filter(ctx);
      case Command::Map: return run_map(ctx);
      case Command::Labels: return run_labels(ctx);
      case Command::Eval: return run_eval(ctx);
      case Command::Stats: return run_stats(ctx);
      case Command::Qt: return run_qt(ctx);
      case Command::GradCheck: return run_gradcheck(ctx);
    }
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    log << "error: " << errc_name(e.code()) << ": " << e.what() << '\n';
    return e.code() == Errc::IoFailure || e.code() == Errc::InvalidConfig ? kExitConfig : kExitRecordFailure;
  }
  return kExitConfig;
}

}  // namespace mwp::cli
