#pragma once

#include "mwp/analysis.hpp"
#include "mwp/record.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cstddef>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

namespace mwp {

// ---------------------------------------------------------------------------
// Ingest

/// Source field names per record field; the first name present in a line
/// wins. `from_json` accepts {"id": "qid", "text": ["original_text"], ...}
/// with string or array values.
struct Schema {
  std::vector<std::string> id{"id"};
  std::vector<std::string> text{"original_text", "text", "segmented_text"};
  std::vector<std::string> equation{"equation"};
  std::vector<std::string> answer{"ans", "answer"};
  std::vector<std::string> origin{"origin"};
  Origin default_origin = Origin::Other;

  static Schema from_json(const nlohmann::json& j);
};

struct IngestError {
  std::size_t line = 0;  // 1-based
  std::string message;
};

struct IngestResult {
  std::vector<MwpRecord> records;
  std::vector<nlohmann::json> sources;  // the raw object behind each record
  std::vector<IngestError> errors;
};

/// Reads JSON-lines, concatenated (possibly multi-line) JSON objects, or one
/// JSON array. Blank lines and "_header" objects are skipped; bad values are
/// reported with their starting line and reading continues.
IngestResult ingest(std::istream& in, const Schema& schema = {});

// ---------------------------------------------------------------------------
// Filter

enum class Rule {
  NoAnswerNoEquation,
  AnswerOnly,
  TooLong,
  ForbiddenConstant,
  DuplicateOfMath23k,
  TooManyQuantities,
  ParseFailure,
  AnswerMismatch,
};

inline constexpr std::array<Rule, 8> kRules = {
    Rule::NoAnswerNoEquation, Rule::AnswerOnly,        Rule::TooLong,      Rule::ForbiddenConstant,
    Rule::DuplicateOfMath23k, Rule::TooManyQuantities, Rule::ParseFailure, Rule::AnswerMismatch,
};

std::string_view to_string(Rule rule);

enum class Disposition { Clean, Unsolvable, Rejected };

std::string_view to_string(Disposition d);

struct FilterVerdict {
  std::set<Rule> rule_hits;
  Disposition disposition = Disposition::Clean;
  std::vector<std::string> reasons;

  bool hit(Rule r) const { return rule_hits.contains(r); }
  nlohmann::json to_json() const;
};

struct FilterLimits {
  std::size_t max_text_tokens = 100;
  std::size_t max_equation_tokens = 20;
  std::vector<ExactValue> allowed_constants{ExactValue(1), ExactValue::pi()};
  int max_quantities = kDefaultMaxQuantities;
  double tolerance = 1e-4;

  AnalysisOptions analysis_options() const;
};

using DedupIndex = std::unordered_set<std::string>;

/// Lowercased text with whitespace removed and every number replaced by
/// its canonical rendering.
std::string dedup_key(const MwpRecord& record);

/// Lists every violated rule. Unparseable equations become ParseFailure
/// hits rather than exceptions.
FilterVerdict classify(const MwpRecord& record, const FilterLimits& limits, const DedupIndex& dedup_index);
FilterVerdict classify(const MwpRecord& record, const Analysis& analysis, const FilterLimits& limits,
                       const DedupIndex& dedup_index);

struct FilterReport {
  std::map<Rule, std::size_t> rule_counts;  // every rule present, possibly 0
  std::size_t clean_count = 0;
  std::size_t unsolvable_count = 0;
  std::size_t rejected_count = 0;

  std::size_t total() const { return clean_count + unsolvable_count + rejected_count; }
  nlohmann::json to_json() const;
};

struct Partition {
  std::vector<MwpRecord> clean;
  std::vector<MwpRecord> unsolvable;
  std::vector<MwpRecord> rejected;
  std::vector<FilterVerdict> verdicts;  // input order
  FilterReport report;
};

/// Stable partition. `threads` > 1 classifies in parallel; the result does
/// not depend on it.
Partition partition(const std::vector<MwpRecord>& records, const FilterLimits& limits,
                    const DedupIndex& dedup_index, unsigned threads = 1);

FilterReport make_report(const std::vector<FilterVerdict>& verdicts);

}  // namespace mwp
