#include "mwp/corpus.hpp"

#include "mwp/error.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <thread>

namespace mwp {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Ingest

namespace {

std::vector<std::string> names_from(const json& v) {
  if (v.is_string()) return {v.get<std::string>()};
  if (v.is_array()) {
    std::vector<std::string> out;
    for (const auto& e : v) out.push_back(e.get<std::string>());
    return out;
  }
  throw Error(Errc::InvalidConfig, "schema entries must be strings or arrays of strings");
}

std::optional<std::string> field(const json& obj, const std::vector<std::string>& names) {
  for (const auto& name : names) {
    auto it = obj.find(name);
    if (it == obj.end() || it->is_null()) continue;
    if (it->is_string()) return it->get<std::string>();
    if (it->is_number()) return it->dump();
    throw Error(Errc::InvalidArgument, "field '" + name + "' is neither a string nor a number");
  }
  return std::nullopt;
}

struct Ingestor {
  const Schema& schema;
  IngestResult result;
  std::unordered_set<std::string> seen_ids;

  void add(const json& obj, std::size_t line) {
    if (!obj.is_object()) {
      result.errors.push_back({line, "not a JSON object"});
      return;
    }
    if (obj.contains("_header")) return;
    try {
      auto text = field(obj, schema.text);
      if (!text || text->empty()) {
        result.errors.push_back({line, "missing mandatory text field"});
        return;
      }
      std::string id = field(obj, schema.id).value_or("line-" + std::to_string(line));
      if (id.empty()) {
        result.errors.push_back({line, "empty id"});
        return;
      }
      if (!seen_ids.insert(id).second) {
        result.errors.push_back({line, "duplicate id '" + id + "'"});
        return;
      }
      Origin origin = schema.default_origin;
      if (auto o = field(obj, schema.origin)) origin = origin_from_string(*o);
      result.records.push_back(make_record(std::move(id), std::move(*text), field(obj, schema.equation),
                                           field(obj, schema.answer), origin));
      result.sources.push_back(obj);
    } catch (const Error& e) {
      result.errors.push_back({line, e.what()});
    }
  }
};

}  // namespace

Schema Schema::from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::InvalidConfig, "schema must be a JSON object");
  Schema s;
  for (const auto& [key, value] : j.items()) {
    if (key == "id") s.id = names_from(value);
    else if (key == "text") s.text = names_from(value);
    else if (key == "equation") s.equation = names_from(value);
    else if (key == "answer") s.answer = names_from(value);
    else if (key == "origin") s.origin = names_from(value);
    else if (key == "default_origin") s.default_origin = origin_from_string(value.get<std::string>());
    else throw Error(Errc::InvalidConfig, "unknown schema key '" + key + "'");
  }
  return s;
}

namespace {

// Splits a byte stream into top-level JSON values. Objects and arrays may
// span lines; anything else runs to the end of its line and is reported as
// invalid. Each value carries the line it starts on.
class ValueScanner {
 public:
  explicit ValueScanner(std::string text) : text_(std::move(text)) {}

  bool next(std::string_view& value, std::size_t& line) {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
    if (pos_ >= text_.size()) return false;
    line = line_;
    const std::size_t start = pos_;
    last_start_ = start;
    if (text_[pos_] != '{' && text_[pos_] != '[') {
      while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      value = std::string_view(text_).substr(start, pos_ - start);
      return true;
    }
    int depth = 0;
    bool in_string = false;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      advance();
      if (in_string) {
        if (c == '\\' && pos_ < text_.size()) advance();
        else if (c == '"') in_string = false;
      } else if (c == '"') {
        in_string = true;
      } else if (c == '{' || c == '[') {
        ++depth;
      } else if (c == '}' || c == ']') {
        if (--depth == 0) break;
      }
    }
    value = std::string_view(text_).substr(start, pos_ - start);
    return true;
  }

  /// Moves back to the line after the last value's first line, so a broken
  /// object cannot swallow the records that follow it.
  void resume_after_last_start() {
    pos_ = last_start_;
    line_ = 1 + static_cast<std::size_t>(std::count(text_.begin(), text_.begin() + pos_, '\n'));
    while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') ++line_;
    ++pos_;
  }

  std::string text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t last_start_ = 0;
};

}  // namespace

IngestResult ingest(std::istream& in, const Schema& schema) {
  Ingestor ing{schema, {}, {}};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(Errc::IoFailure, "read error");

  ValueScanner scanner(buffer.str());
  std::string_view text;
  std::size_t line = 0;
  bool first = true;
  while (scanner.next(text, line)) {
    json value;
    try {
      value = json::parse(text);
    } catch (const json::exception& e) {
      ing.result.errors.push_back({line, std::string("invalid JSON: ") + e.what()});
      if (text.find('\n') != std::string_view::npos) scanner.resume_after_last_start();
      first = false;
      continue;
    }
    // A leading array holds the whole corpus; its elements are numbered from 1.
    if (first && value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i) ing.add(value[i], i + 1);
    } else {
      ing.add(value, line);
    }
    first = false;
  }
  return std::move(ing.result);
}

// ---------------------------------------------------------------------------
// Filter

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::NoAnswerNoEquation: return "NoAnswerNoEquation";
    case Rule::AnswerOnly: return "AnswerOnly";
    case Rule::TooLong: return "TooLong";
    case Rule::ForbiddenConstant: return "ForbiddenConstant";
    case Rule::DuplicateOfMath23k: return "DuplicateOfMath23k";
    case Rule::TooManyQuantities: return "TooManyQuantities";
    case Rule::ParseFailure: return "ParseFailure";
    case Rule::AnswerMismatch: return "AnswerMismatch";
  }
  return "?";
}

std::string_view to_string(Disposition d) {
  switch (d) {
    case Disposition::Clean: return "clean";
    case Disposition::Unsolvable: return "unsolvable";
    case Disposition::Rejected: return "rejected";
  }
  return "?";
}

json FilterVerdict::to_json() const {
  json hits = json::array();
  for (Rule r : rule_hits) hits.push_back(to_string(r));
  return {{"rule_hits", std::move(hits)}, {"disposition", to_string(disposition)}, {"reasons", reasons}};
}

AnalysisOptions FilterLimits::analysis_options() const {
  AnalysisOptions o;
  o.k = max_quantities;
  o.vocab = Vocab::standard(max_quantities);
  o.vocab.constants = allowed_constants;
  o.tolerance = tolerance;
  return o;
}

std::string dedup_key(const MwpRecord& record) {
  std::string key;
  for (const auto& tok : record.tokens) {
    auto m = match_number_surface(tok, 0, true);
    if (m && m->length == tok.size()) {
      key += m->number.value.canonical();
      continue;
    }
    for (char c : tok) key += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
  }
  return key;
}

FilterVerdict classify(const MwpRecord& record, const FilterLimits& limits, const DedupIndex& dedup_index) {
  return classify(record, analyze(record, limits.analysis_options()), limits, dedup_index);
}

FilterVerdict classify(const MwpRecord& record, const Analysis& a, const FilterLimits& limits,
                       const DedupIndex& dedup_index) {
  FilterVerdict v;
  auto hit = [&](Rule r, std::string reason) {
    v.rule_hits.insert(r);
    v.reasons.push_back(std::string(to_string(r)) + ": " + std::move(reason));
  };

  const bool has_eq = record.equation.has_value();
  const bool has_ans = record.answer.has_value();

  if (!has_eq && !has_ans) hit(Rule::NoAnswerNoEquation, "no answer and no equation");
  if (has_ans && !has_eq) hit(Rule::AnswerOnly, "answer without equation");

  if (record.tokens.size() > limits.max_text_tokens) {
    hit(Rule::TooLong, "text has " + std::to_string(record.tokens.size()) + " tokens");
  } else if (has_eq && a.equation_token_count > limits.max_equation_tokens) {
    hit(Rule::TooLong, "equation has " + std::to_string(a.equation_token_count) + " tokens");
  }

  if (a.external_constant) hit(Rule::ForbiddenConstant, a.resolve_error);
  if (!dedup_index.empty() && dedup_index.contains(dedup_key(record))) {
    hit(Rule::DuplicateOfMath23k, "duplicate of a reference problem");
  }
  if (a.quantities.size() > static_cast<std::size_t>(limits.max_quantities)) {
    hit(Rule::TooManyQuantities, a.mapping_error);
  }
  if (has_eq && !a.tree) hit(Rule::ParseFailure, a.parse_error);
  if (has_eq && a.tree && has_ans) {
    if (!a.answer) hit(Rule::AnswerMismatch, a.answer_error);
    else if (a.check && !a.check->matches) hit(Rule::AnswerMismatch, a.check->reason);
  }

  if (v.rule_hits.empty()) {
    v.disposition = Disposition::Clean;
  } else if (v.hit(Rule::NoAnswerNoEquation)) {
    v.disposition = Disposition::Rejected;
  } else if (v.hit(Rule::AnswerOnly) || a.answer) {
    // Text plus a usable answer still feeds weak supervision.
    v.disposition = Disposition::Unsolvable;
  } else {
    v.disposition = Disposition::Rejected;
  }
  return v;
}

json FilterReport::to_json() const {
  json rules = json::object();
  for (const auto& [rule, count] : rule_counts) rules[std::string(to_string(rule))] = count;
  return {{"rule_counts", std::move(rules)},
          {"clean_count", clean_count},
          {"unsolvable_count", unsolvable_count},
          {"rejected_count", rejected_count},
          {"total", total()}};
}

FilterReport make_report(const std::vector<FilterVerdict>& verdicts) {
  FilterReport report;
  for (Rule r : kRules) report.rule_counts[r] = 0;
  for (const auto& v : verdicts) {
    for (Rule r : v.rule_hits) ++report.rule_counts[r];
    switch (v.disposition) {
      case Disposition::Clean: ++report.clean_count; break;
      case Disposition::Unsolvable: ++report.unsolvable_count; break;
      case Disposition::Rejected: ++report.rejected_count; break;
    }
  }
  return report;
}

Partition partition(const std::vector<MwpRecord>& records, const FilterLimits& limits,
                    const DedupIndex& dedup_index, unsigned threads) {
  Partition p;
  p.verdicts.resize(records.size());

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(records.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < records.size(); ++i) p.verdicts[i] = classify(records[i], limits, dedup_index);
  } else {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        for (std::size_t i = t; i < records.size(); i += threads)
          p.verdicts[i] = classify(records[i], limits, dedup_index);
      });
    }
  }

  for (std::size_t i = 0; i < records.size(); ++i) {
    switch (p.verdicts[i].disposition) {
      case Disposition::Clean: p.clean.push_back(records[i]); break;
      case Disposition::Unsolvable: p.unsolvable.push_back(records[i]); break;
      case Disposition::Rejected: p.rejected.push_back(records[i]); break;
    }
  }
  p.report = make_report(p.verdicts);
  return p;
}

}  // namespace mwp
