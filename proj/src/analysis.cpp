#include "mwp/analysis.hpp"

#include "mwp/error.hpp"

namespace mwp {

namespace {

std::string describe(const Error& e) { return std::string(errc_name(e.code())) + ": " + e.what(); }

}  // namespace

Analysis analyze(const MwpRecord& record, const AnalysisOptions& options) {
  Analysis a;
  a.quantities = recognize_numbers(record.tokens);

  // Unbounded table: equation resolution and answer checks still run when
  // the record has more than k quantities.
  const MappedProblem full = map_numbers(record.tokens, a.quantities, static_cast<int>(a.quantities.size()));
  a.placeholder_tokens = full.tokens;
  try {
    a.mapped = map_numbers(record.tokens, a.quantities, options.k);
  } catch (const Error& e) {
    a.mapping_error = describe(e);
  }

  if (record.answer) {
    try {
      a.answer = parse_answer(*record.answer);
    } catch (const Error& e) {
      a.answer_error = describe(e);
    }
  }

  if (!record.equation) return a;

  try {
    const auto tokens = tokenize_equation(*record.equation);
    a.equation_token_count = tokens.size();
    a.tree = parse_equation(tokens);
  } catch (const Error& e) {
    a.parse_error = describe(e);
    return a;
  }

  try {
    a.resolved = resolve_equation_numbers(*a.tree, full, options.vocab);
  } catch (const Error& e) {
    a.resolve_error = describe(e);
    a.external_constant = e.code() == Errc::ExternalConstant;
  }

  if (a.answer) {
    const auto bindings = full.bindings();
    a.check = check_answer(*a.tree, bindings, a.answer->value, options.tolerance);
  }
  return a;
}

}  // namespace mwp
