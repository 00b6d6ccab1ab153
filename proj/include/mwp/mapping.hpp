#pragma once

#include "mwp/equation.hpp"
#include "mwp/numeracy.hpp"

#include <nlohmann/json.hpp>

#include <span>
#include <string>
#include <vector>

namespace mwp {

inline constexpr int kDefaultMaxQuantities = 15;

struct PlaceholderEntry {
  std::string placeholder;  // "n1", "n2", ...
  NumberToken quantity;
};

/// Problem text with every quantity replaced by a placeholder, in order of
/// occurrence. Repeated values get distinct placeholders.
struct MappedProblem {
  std::vector<std::string> tokens;
  std::vector<PlaceholderEntry> table;
  int k = kDefaultMaxQuantities;

  /// Values in placeholder order; index i binds n(i+1).
  std::vector<ExactValue> bindings() const;
};

/// Target vocabulary: five operators, k placeholders, constants.
struct Vocab {
  std::array<Op, 5> ops = kOperators;
  int k = kDefaultMaxQuantities;
  std::vector<ExactValue> constants;

  /// Constants {1, pi}.
  static Vocab standard(int k = kDefaultMaxQuantities);
  bool is_constant(const ExactValue& v) const;
};

/// Throws Errc::TooManyQuantities when quantities.size() > k.
MappedProblem map_numbers(std::span<const std::string> tokens, std::span<const NumberToken> quantities,
                          int k = kDefaultMaxQuantities);

/// Rewrites literal leaves into placeholders (earliest quantity with equal
/// value wins) or constants. A literal written as "(a/b)" that matches
/// neither is retried as the division a/b; conversely a division of two
/// integer literals that cannot be resolved leaf by leaf is matched as one
/// fraction. Throws Errc::ExternalConstant for anything left over.
EquationTree resolve_equation_numbers(const EquationTree& tree, const MappedProblem& mapped,
                                      const Vocab& vocab);

nlohmann::json to_json(const MappedProblem& mapped);

}  // namespace mwp
