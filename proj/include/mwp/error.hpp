#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mwp {

enum class Errc {
  // numeracy
  UnparseableAnswer,
  ZeroDenominator,
  // equation
  UnknownCharacter,
  SyntaxError,
  UnbalancedParentheses,
  PrefixUnderflow,
  DivisionByZero,
  ZeroToNegativePower,
  NumericOverflow,
  NonFiniteResult,
  UnboundPlaceholder,
  AmbiguousLeaf,
  LeafNotFound,
  InvalidArgument,
  // mapping
  TooManyQuantities,
  ExternalConstant,
  // heads
  DimensionMismatch,
  InvalidInstance,
  // io
  IoFailure,
  InvalidConfig,
};

std::string_view errc_name(Errc code);

/// Library-wide exception. `position()` is a character or token offset when
/// the failing input has one, npos otherwise.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::size_t position = npos)
      : std::runtime_error(what), code_(code), position_(position) {}

  Errc code() const noexcept { return code_; }
  std::size_t position() const noexcept { return position_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  Errc code_;
  std::size_t position_;
};

}  // namespace mwp
