#pragma once

#include "mwp/exact_value.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mwp {

enum class NumberKind { Integer, Decimal, Fraction, Percent, Mixed, Pi };
enum class NumberType { Whole, NonInteger };

std::string_view to_string(NumberKind kind);

struct TypedNumber {
  ExactValue value;
  NumberKind kind = NumberKind::Integer;
};

/// A recognized quantity in a problem's token sequence.
struct NumberToken {
  std::size_t position = 0;
  std::string surface;
  ExactValue value;
  NumberKind kind = NumberKind::Integer;
};

/// Longest number surface starting at byte `pos` of `s`.
///
/// Recognized forms, tried longest first:
///   15        integer
///   3.5       decimal
///   30%  3.5% percent (full-width percent sign accepted)
///   (3/5)     parenthesized fraction
///   3/5       bare fraction, only when `allow_bare_fraction`
///   1(1/2)    mixed number, value 1 + 1/2
///   π         pi
///
/// `numerator`/`denominator` keep the unreduced written parts of fraction
/// surfaces so callers can reinterpret "(a/b)" as a division.
struct SurfaceMatch {
  std::size_t length = 0;
  TypedNumber number;
  std::optional<std::pair<BigInt, BigInt>> fraction_parts;
};

std::optional<SurfaceMatch> match_number_surface(std::string_view s, std::size_t pos,
                                                 bool allow_bare_fraction);

/// Default tokenizer for problem text. Whitespace separates; number
/// surfaces, runs of ASCII letters and single codepoints (CJK characters,
/// punctuation) each form one token.
std::vector<std::string> tokenize_text(std::string_view text);

std::vector<NumberToken> recognize_numbers(std::span<const std::string> tokens);

/// Surface-form typing: only plain integers are whole.
NumberType number_type(NumberKind kind);
inline NumberType number_type(const NumberToken& token) { return number_type(token.kind); }

/// Parses an answer string: optional "x=" head, optional sign, then any
/// recognized number surface or a canonical rendering ("p/q", "p/q*pi").
/// Throws Errc::UnparseableAnswer.
TypedNumber parse_answer(std::string_view answer);

}  // namespace mwp
