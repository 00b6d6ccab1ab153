// Acceptance suite: one PASS/FAIL/SKIP/REPORT line per criterion.
//
//   MWP_MATH23K_TEST  path to the official Math23k public test file (criterion 8)
//   MWP_APE210K       path to an Ape210k dump (criterion 9)

#include "mwp/corpus.hpp"
#include "mwp/error.hpp"
#include "mwp/heads.hpp"
#include "mwp/labels.hpp"
#include "support/gmp_oracle.hpp"
#include "support/random_tree.hpp"

#ifdef MWP_HAVE_CLI
#include "cli.hpp"
#endif

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

using namespace mwp;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

enum class Status { Pass, Fail, Skip, Report };

struct Outcome {
  Status status = Status::Pass;
  std::string detail;
};

Outcome pass(std::string d) { return {Status::Pass, std::move(d)}; }
Outcome fail(std::string d) { return {Status::Fail, std::move(d)}; }
Outcome verdict(bool ok, std::string d) { return {ok ? Status::Pass : Status::Fail, std::move(d)}; }

const char* label(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Skip: return "SKIP";
    case Status::Report: return "REPORT";
  }
  return "?";
}

fs::path scratch(const std::string& name) {
  const char* env = std::getenv("MWP_TEST_TMP");
  fs::path dir = fs::path(env ? env : fs::temp_directory_path().string()) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------------------

constexpr double kEvalBudget = 1.0;
constexpr double kRoundTripBudget = 10.0;
constexpr double kOracleBudget = 10.0;
constexpr double kGradBudget = 30.0;
constexpr int kTrees = 10000;
constexpr double kGradThreshold = 1e-5;
constexpr double kGradStep = 1e-6;
constexpr std::size_t kMlmTokens = 100000;
constexpr double kRateLo = 0.095, kRateHi = 0.105, kKeepLo = 0.79, kKeepHi = 0.81;
constexpr int kSweepRecords = 1000;
constexpr int kReversalPairs = 1000;
constexpr long kPublishedCleanCount = 81225;
const std::array<int, 7> kPublishedHistogram = {16, 331, 485, 124, 31, 7, 6};

Outcome reference_expressions() {
  const std::pair<const char*, ExactValue> cases[] = {
      {"20-(20*5-70)/(5+1)", ExactValue(15)},
      {"15/(1-((3)/(2+3))-30%)", ExactValue(150)},
      {"(50*72%-25*(3/5))/(50-25)", ExactValue::fraction(21, 25)},
      {"(4/9)+(1/9)", ExactValue::fraction(5, 9)},
      {"(80-25)*2/(4-2)", ExactValue(55)},
  };
  std::string detail;
  for (const auto& [expr, expected] : cases) {
    const EvalValue v = evaluate(parse_equation(expr));
    if (!v.exact() || v.exact_value() != expected)
      return fail(std::string(expr) + " gave " + v.render() + ", expected " + expected.canonical());
    detail += v.render() + " ";
  }
  const AnswerCheck annotated = check_answer(parse_equation("(80-25)*2/(4-2)"), {}, ExactValue(15));
  if (annotated.matches) return fail("annotated answer 15 unexpectedly accepted");
  return pass(detail + "; annotated 15 rejected as AnswerMismatch");
}

Outcome round_trip() {
  testing::RandomTrees gen(20240601);
  for (int i = 0; i < kTrees; ++i) {
    const EquationTree t = gen.next();
    if (parse_equation(to_string(t, Notation::Infix)) != t)
      return fail("infix mismatch on " + to_string(t, Notation::Infix));
    if (parse_prefix(serialize(t, Notation::Prefix)) != t)
      return fail("prefix mismatch on " + to_string(t, Notation::Prefix));
  }
  return pass(std::to_string(kTrees) + " trees, depth <= 6");
}

Outcome oracle_equivalence() {
  testing::RandomTrees gen(424242, {.max_depth = 6, .allow_pi = false, .allow_placeholders = true,
                                    .small_integer_exponents = true});
  const std::vector<ExactValue> bindings{7, ExactValue::fraction(2, 3), 0, ExactValue::fraction(-9, 4), 1};
  std::vector<mpq_class> q;
  for (const auto& b : bindings) q.push_back(testing::to_mpq(b));
  int values = 0, errors = 0;
  for (int i = 0; i < kTrees; ++i) {
    const EquationTree t = gen.next();
    const testing::OracleResult expected = testing::oracle(t, q);
    try {
      const EvalValue v = evaluate(t, bindings);
      if (!expected.value) return fail("oracle raised, evaluator did not: " + to_string(t, Notation::Infix));
      if (!v.exact() || testing::to_mpq(v.exact_value()) != *expected.value)
        return fail("value mismatch on " + to_string(t, Notation::Infix));
      ++values;
    } catch (const Error& e) {
      if (!expected.error || *expected.error != e.code())
        return fail("error mismatch on " + to_string(t, Notation::Infix) + ": " + std::string(errc_name(e.code())));
      ++errors;
    }
  }
  return pass(std::to_string(values) + " values, " + std::to_string(errors) + " matching errors");
}

Outcome gradient_checks() {
  double worst = 0.0;
  std::string where;
  for (HeadTask task : kHeadTasks) {
    for (std::uint64_t c = 0; c < 50; ++c) {
      const HeadConfig cfg = random_head_config(task, 8, 8, 12, 50, 1000 * static_cast<std::uint64_t>(task) + c);
      const GradCheckReport r = grad_check(task, cfg.params, cfg.z, cfg.instances, kGradStep);
      if (r.max_rel_err > worst) {
        worst = r.max_rel_err;
        where = std::string(to_string(task)) + " " + r.argmax_coord;
      }
    }
  }
  return verdict(worst < kGradThreshold, "max rel err " + fmt(worst) + " at " + where + " (threshold " +
                                              fmt(kGradThreshold) + ")");
}

std::string mlm_corpus_plans(std::size_t& masks, std::size_t& replaces, std::size_t& keeps) {
  std::mt19937_64 rng(99);
  std::vector<std::vector<std::string>> records;
  std::size_t total = 0;
  while (total < kMlmTokens) {
    const std::size_t len = std::min<std::size_t>(20 + rng() % 160, kMlmTokens - total);
    std::vector<std::string> toks;
    for (std::size_t i = 0; i < len; ++i) toks.push_back("w" + std::to_string(rng() % 500));
    total += len;
    records.push_back(std::move(toks));
  }
  const auto vocab = build_replacement_vocab(records);
  std::string dump;
  masks = replaces = keeps = 0;
  for (std::size_t r = 0; r < records.size(); ++r) {
    const MlmPlan plan = mlm_plan(records[r], derive_record_seed(7, "rec-" + std::to_string(r)), vocab);
    for (const auto& s : plan.actions) {
      if (s.action == MlmAction::Mask) ++masks;
      else if (s.action == MlmAction::Replace) ++replaces;
      else ++keeps;
    }
    dump += plan.to_json().dump();
    dump += '\n';
  }
  return dump;
}

Outcome mlm_statistics() {
  std::size_t m1, r1, k1, m2, r2, k2;
  const std::string a = mlm_corpus_plans(m1, r1, k1);
  const std::string b = mlm_corpus_plans(m2, r2, k2);
  const double n = static_cast<double>(m1 + r1 + k1);
  const double mask = m1 / n, replace = r1 / n, keep = k1 / n;
  const bool ok = n == kMlmTokens && mask >= kRateLo && mask <= kRateHi && replace >= kRateLo &&
                  replace <= kRateHi && keep >= kKeepLo && keep <= kKeepHi && a == b;
  return verdict(ok, "mask " + fmt(mask) + ", replace " + fmt(replace) + ", keep " + fmt(keep) + " over " +
                         std::to_string(static_cast<long>(n)) + " tokens; runs " +
                         (a == b ? "byte-identical" : "DIFFER"));
}

Outcome filter_fixture() {
  const std::string dir = MWP_FIXTURE_DIR;
  std::ifstream in(dir + "/filter_fixture.jsonl");
  std::ifstream ref(dir + "/filter_dedup_ref.jsonl");
  std::ifstream exp(dir + "/filter_fixture.expected.json");
  if (!in || !ref || !exp) return fail("fixture files missing");
  const IngestResult records = ingest(in);
  DedupIndex dedup;
  for (const auto& r : ingest(ref).records) dedup.insert(dedup_key(r));
  const json expected = json::parse(exp);

  const Partition p = partition(records.records, FilterLimits{}, dedup);
  for (std::size_t i = 0; i < records.records.size(); ++i) {
    const auto& id = records.records[i].id;
    std::set<std::string> hits;
    for (Rule r : p.verdicts[i].rule_hits) hits.insert(std::string(to_string(r)));
    const json& e = expected.at(id);
    if (std::string(to_string(p.verdicts[i].disposition)) != e["disposition"] ||
        hits != e["rule_hits"].get<std::set<std::string>>())
      return fail("record " + id + " classified " + std::string(to_string(p.verdicts[i].disposition)));
  }
  const bool ok = records.records.size() == 14 && p.report.total() == 14 && expected.size() == 14;
  return verdict(ok, "clean " + std::to_string(p.report.clean_count) + ", unsolvable " +
                         std::to_string(p.report.unsolvable_count) + ", rejected " +
                         std::to_string(p.report.rejected_count) + ", total " + std::to_string(p.report.total()));
}

// Synthetic problems: random quantities in text, a random equation over them.
MwpRecord synthetic_record(std::mt19937_64& rng, int index) {
  auto below = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  const int count = 1 + below(6);
  std::vector<std::string> surfaces;
  std::string text = "Problem " + std::string(1, static_cast<char>('A' + index % 26)) + ":";
  for (int i = 0; i < count; ++i) {
    std::string s;
    switch (below(4)) {
      case 0: s = std::to_string(1 + below(12)) + "." + std::to_string(1 + below(9)); break;
      case 1: s = std::to_string(5 * (1 + below(19))) + "%"; break;
      case 2: s = "(" + std::to_string(1 + below(8)) + "/" + std::to_string(9 + below(5)) + ")"; break;
      default: s = std::to_string(1 + below(99)); break;
    }
    surfaces.push_back(s);
    text += " box holds " + s + " items,";
  }
  text += " how many in total?";

  std::function<std::string(int)> expr = [&](int depth) -> std::string {
    if (depth >= 3 || below(3) == 0) return surfaces[below(count)];
    static const char ops[] = {'+', '-', '*', '/'};
    return "(" + expr(depth + 1) + ops[below(4)] + expr(depth + 1) + ")";
  };
  const std::string equation = expr(0);
  std::optional<std::string> answer;
  try {
    answer = evaluate(parse_equation(equation)).render();
  } catch (const Error&) {
  }
  if (below(10) == 0) answer = std::to_string(below(50));  // some inconsistent annotations
  return make_record("syn-" + std::to_string(index), text, "x=" + equation, answer);
}

Outcome label_sweep() {
  std::mt19937_64 rng(8675309);
  std::vector<MwpRecord> records;
  std::vector<Analysis> analyses;
  std::vector<std::vector<std::string>> token_lists;
  for (int i = 0; i < kSweepRecords; ++i) {
    records.push_back(synthetic_record(rng, i));
    analyses.push_back(analyze(records.back()));
    token_lists.push_back(analyses.back().placeholder_tokens);
  }
  const auto vocab = build_replacement_vocab(token_lists);

  std::size_t full = 0, pairs = 0;
  for (int i = 0; i < kSweepRecords; ++i) {
    const LabelBundle b = emit_label_bundle(records[i], analyses[i], 11, vocab);
    if (b.nt_ground.size() != static_cast<std::size_t>(b.num_count)) return fail(b.id + ": |nt_ground| != num_count");
    if (b.availability.weak) {
      if (b.num_m_comp.size() != b.nt_ground.size()) return fail(b.id + ": |num_m_comp| != num_count");
      for (std::size_t q = 0; q < b.nt_ground.size(); ++q)
        if (b.cat_comp[q] != (b.nt_ground[q] ^ *b.at_pred)) return fail(b.id + ": cat_comp != nt XOR at");
    }
    if (b.availability.full) {
      ++full;
      if (b.o_pred.size() != b.t_pred.size()) return fail(b.id + ": o_pred/t_pred sizes differ");
      for (std::size_t k = 0; k < b.o_pred.size(); ++k) {
        if (b.o_pred[k].i != b.t_pred[k].i || b.o_pred[k].j != b.t_pred[k].j)
          return fail(b.id + ": o_pred/t_pred pair sets differ");
      }
      pairs += b.o_pred.size();
    }
  }

  // Antisymmetry on random leaf pairs drawn from the resolved trees.
  int checked = 0;
  for (int attempt = 0; checked < kReversalPairs && attempt < 100 * kReversalPairs; ++attempt) {
    const Analysis& a = analyses[rng() % analyses.size()];
    if (!a.resolved || a.resolved->leaf_count() < 2) continue;
    const auto leaves = a.resolved->leaves();
    const NodeId x = leaves[rng() % leaves.size()];
    const NodeId y = leaves[rng() % leaves.size()];
    if (x == y) continue;
    if (tree_distance(*a.resolved, x, y) != -tree_distance(*a.resolved, y, x)) return fail("antisymmetry violated");
    if (pair_operator(*a.resolved, x, y) != pair_operator(*a.resolved, y, x)) return fail("operator not symmetric");
    ++checked;
  }
  if (checked < kReversalPairs) return fail("only " + std::to_string(checked) + " reversal pairs drawn");
  return pass(std::to_string(kSweepRecords) + " records, " + std::to_string(full) + " with full labels, " +
              std::to_string(pairs) + " pair labels, " + std::to_string(checked) + " reversals");
}

Outcome math23k_histogram() {
  const char* path = std::getenv("MWP_MATH23K_TEST");
  if (!path || !fs::exists(path)) return {Status::Skip, "set MWP_MATH23K_TEST to the public test file"};
#ifdef MWP_HAVE_CLI
  const fs::path out = scratch("math23k_stats");
  cli::RunConfig cfg;
  cfg.command = cli::Command::Stats;
  cfg.input = path;
  cfg.output_dir = out.string();
  cfg.quiet = true;
  std::ostringstream log;
  if (cli::run(cfg, log) != cli::kExitOk) return fail("stats failed: " + log.str());
  const json stats = json::parse(std::ifstream(out / "stats.json"));
  const char* bins[] = {"0", "1", "2", "3", "4", "5", ">5"};
  std::string got;
  bool ok = true;
  for (std::size_t i = 0; i < 7; ++i) {
    const int v = stats["operator_count"][bins[i]].get<int>();
    ok = ok && v == kPublishedHistogram[i];
    got += (i ? "/" : "") + std::to_string(v);
  }
  return verdict(ok, "histogram " + got + " (expected 16/331/485/124/31/7/6)");
#else
  return {Status::Skip, "built without the command-line tool"};
#endif
}

Outcome ape210k_report() {
  const char* path = std::getenv("MWP_APE210K");
  if (!path || !fs::exists(path)) return {Status::Skip, "set MWP_APE210K to an Ape210k dump (report only)"};
#ifdef MWP_HAVE_CLI
  const fs::path out = scratch("ape210k_filter");
  cli::RunConfig cfg;
  cfg.command = cli::Command::Filter;
  cfg.input = path;
  cfg.output_dir = out.string();
  cfg.quiet = true;
  cfg.threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* ref = std::getenv("MWP_MATH23K_ALL")) cfg.dedup_ref = ref;
  std::ostringstream log;
  cli::run(cfg, log);
  const json report = json::parse(std::ifstream(out / "filter_report.json"));
  const long clean = report["clean_count"].get<long>();
  return {Status::Report, "clean " + std::to_string(clean) + " vs 81225 (delta " +
                              std::to_string(clean - kPublishedCleanCount) + ")"};
#else
  return {Status::Skip, "built without the command-line tool"};
#endif
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    double budget_seconds;  // 0 = no time limit
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "reference expressions evaluate exactly", kEvalBudget, reference_expressions},
      {2, "infix and prefix round trip", kRoundTripBudget, round_trip},
      {3, "evaluator matches GMP interpreter", kOracleBudget, oracle_equivalence},
      {4, "loss head gradient checks", kGradBudget, gradient_checks},
      {5, "MLM action statistics", 0, mlm_statistics},
      {6, "filter fixture partition", 0, filter_fixture},
      {7, "label consistency sweep", 0, label_sweep},
      {8, "Math23k operator histogram", 0, math23k_histogram},
      {9, "Ape210k clean split size", 0, ape210k_report},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.status == Status::Pass && c.budget_seconds > 0 && secs > c.budget_seconds) {
      o = fail(o.detail + "; took " + fmt(secs) + " s, budget " + fmt(c.budget_seconds) + " s");
    }
    if (o.status == Status::Fail) ++failures;
    std::cout << "[" << label(o.status) << "] " << c.number << ". " << c.name << ": " << o.detail << " ("
              << fmt(secs) << " s)" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
