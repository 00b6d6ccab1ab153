#pragma once

#include "mwp/equation.hpp"
#include "mwp/mapping.hpp"
#include "mwp/numeracy.hpp"
#include "mwp/record.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mwp {

struct AnalysisOptions {
  int k = kDefaultMaxQuantities;
  Vocab vocab = Vocab::standard();
  double tolerance = 1e-4;
};

/// Everything the filter, label and eval stages derive from one record.
/// Each stage records its failure reason instead of throwing.
struct Analysis {
  std::vector<NumberToken> quantities;
  /// Text tokens with every quantity replaced, regardless of k.
  std::vector<std::string> placeholder_tokens;

  std::optional<MappedProblem> mapped;  // absent when quantities exceed k
  std::string mapping_error;

  std::optional<TypedNumber> answer;
  std::string answer_error;

  std::size_t equation_token_count = 0;
  std::optional<EquationTree> tree;  // as written
  std::string parse_error;

  std::optional<EquationTree> resolved;  // placeholder and constant leaves only
  std::string resolve_error;
  bool external_constant = false;

  std::optional<AnswerCheck> check;  // present when equation parsed and answer parsed

  bool answer_consistent() const { return check && check->matches; }
};

Analysis analyze(const MwpRecord& record, const AnalysisOptions& options = {});

}  // namespace mwp
