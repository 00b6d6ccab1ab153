#include "mwp/numeracy.hpp"

#include "mwp/error.hpp"

namespace mwp {

namespace {

constexpr std::string_view kPi = "\xCF\x80";               // U+03C0
constexpr std::string_view kFullWidthPercent = "\xEF\xBC\x85";  // U+FF05

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ascii_letter(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

std::size_t digit_run(std::string_view s, std::size_t pos) {
  std::size_t n = 0;
  while (pos + n < s.size() && is_digit(s[pos + n])) ++n;
  return n;
}

BigInt to_bigint(std::string_view digits) { return BigInt(std::string(digits)); }

BigInt pow10(std::size_t n) {
  BigInt r = 1;
  for (std::size_t i = 0; i < n; ++i) r *= 10;
  return r;
}

std::size_t percent_sign(std::string_view s, std::size_t pos) {
  if (pos < s.size() && s[pos] == '%') return 1;
  if (s.substr(pos, kFullWidthPercent.size()) == kFullWidthPercent) return kFullWidthPercent.size();
  return 0;
}

// "(a/b)" at pos; returns length and parts.
std::optional<std::pair<std::size_t, std::pair<BigInt, BigInt>>> paren_fraction(std::string_view s,
                                                                               std::size_t pos) {
  if (pos >= s.size() || s[pos] != '(') return std::nullopt;
  std::size_t p = pos + 1;
  const std::size_t a = digit_run(s, p);
  if (a == 0) return std::nullopt;
  p += a;
  if (p >= s.size() || s[p] != '/') return std::nullopt;
  ++p;
  const std::size_t b = digit_run(s, p);
  if (b == 0) return std::nullopt;
  if (p + b >= s.size() || s[p + b] != ')') return std::nullopt;
  BigInt num = to_bigint(s.substr(pos + 1, a));
  BigInt den = to_bigint(s.substr(p, b));
  if (den == 0) return std::nullopt;
  return std::make_pair(p + b + 1 - pos, std::make_pair(std::move(num), std::move(den)));
}

std::size_t codepoint_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;  // stray continuation byte; consume it alone
}

std::size_t whitespace_length(std::string_view s, std::size_t pos) {
  const char c = s[pos];
  if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') return 1;
  if (s.substr(pos, 2) == "\xC2\xA0") return 2;      // no-break space
  if (s.substr(pos, 3) == "\xE3\x80\x80") return 3;  // ideographic space
  return 0;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view to_string(NumberKind kind) {
  switch (kind) {
    case NumberKind::Integer: return "Integer";
    case NumberKind::Decimal: return "Decimal";
    case NumberKind::Fraction: return "Fraction";
    case NumberKind::Percent: return "Percent";
    case NumberKind::Mixed: return "Mixed";
    case NumberKind::Pi: return "Pi";
  }
  return "?";
}

std::optional<SurfaceMatch> match_number_surface(std::string_view s, std::size_t pos,
                                                 bool allow_bare_fraction) {
  if (pos >= s.size()) return std::nullopt;

  if (s.substr(pos, kPi.size()) == kPi) {
    return SurfaceMatch{kPi.size(), {ExactValue::pi(), NumberKind::Pi}, std::nullopt};
  }

  if (s[pos] == '(') {
    auto frac = paren_fraction(s, pos);
    if (!frac) return std::nullopt;
    auto& [len, parts] = *frac;
    return SurfaceMatch{len,
                        {ExactValue::fraction(parts.first, parts.second), NumberKind::Fraction},
                        parts};
  }

  const std::size_t int_len = digit_run(s, pos);
  if (int_len == 0) return std::nullopt;
  const BigInt whole = to_bigint(s.substr(pos, int_len));
  std::size_t p = pos + int_len;

  // Mixed number: a(b/c)
  if (auto frac = paren_fraction(s, p)) {
    auto& [len, parts] = *frac;
    Rational v = Rational(whole) + Rational(parts.first, parts.second);
    return SurfaceMatch{int_len + len, {ExactValue(v), NumberKind::Mixed}, std::nullopt};
  }

  Rational value(whole);
  NumberKind kind = NumberKind::Integer;
  if (p + 1 < s.size() && s[p] == '.' && is_digit(s[p + 1])) {
    const std::size_t frac_len = digit_run(s, p + 1);
    value += Rational(to_bigint(s.substr(p + 1, frac_len)), pow10(frac_len));
    p += 1 + frac_len;
    kind = NumberKind::Decimal;
  }

  if (const std::size_t pct = percent_sign(s, p); pct > 0) {
    value /= 100;
    return SurfaceMatch{p + pct - pos, {ExactValue(value), NumberKind::Percent}, std::nullopt};
  }

  if (kind == NumberKind::Integer && allow_bare_fraction && p < s.size() && s[p] == '/') {
    const std::size_t den_len = digit_run(s, p + 1);
    if (den_len > 0) {
      BigInt den = to_bigint(s.substr(p + 1, den_len));
      if (den != 0) {
        return SurfaceMatch{p + 1 + den_len - pos,
                            {ExactValue::fraction(whole, den), NumberKind::Fraction},
                            std::make_pair(whole, den)};
      }
    }
  }

  return SurfaceMatch{p - pos, {ExactValue(value), kind}, std::nullopt};
}

std::vector<std::string> tokenize_text(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (const std::size_t ws = whitespace_length(text, i); ws > 0) {
      i += ws;
      continue;
    }
    if (auto m = match_number_surface(text, i, true)) {
      tokens.emplace_back(text.substr(i, m->length));
      i += m->length;
      continue;
    }
    if (is_ascii_letter(text[i])) {
      std::size_t j = i;
      while (j < text.size() && is_ascii_letter(text[j])) ++j;
      tokens.emplace_back(text.substr(i, j - i));
      i = j;
      continue;
    }
    const std::size_t len = std::min(codepoint_length(static_cast<unsigned char>(text[i])), text.size() - i);
    tokens.emplace_back(text.substr(i, len));
    i += len;
  }
  return tokens;
}

std::vector<NumberToken> recognize_numbers(std::span<const std::string> tokens) {
  std::vector<NumberToken> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    auto m = match_number_surface(tok, 0, true);
    if (m && m->length == tok.size()) {
      out.push_back(NumberToken{i, tok, m->number.value, m->number.kind});
    }
  }
  return out;
}

NumberType number_type(NumberKind kind) {
  return kind == NumberKind::Integer ? NumberType::Whole : NumberType::NonInteger;
}

TypedNumber parse_answer(std::string_view answer) {
  const std::string_view original = answer;
  auto fail = [&]() -> Error {
    return Error(Errc::UnparseableAnswer, "unparseable answer: '" + std::string(original) + "'");
  };

  std::string_view s = trim(answer);
  // Optional assignment head such as "x=".
  if (auto eq = s.find('='); eq != std::string_view::npos) {
    std::string_view head = trim(s.substr(0, eq));
    bool identifier = !head.empty() && is_ascii_letter(head.front());
    for (char c : head) identifier = identifier && (is_ascii_letter(c) || is_digit(c) || c == '_');
    if (!identifier) throw fail();
    s = trim(s.substr(eq + 1));
  }

  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s = trim(s.substr(1));
  }
  if (s.empty()) throw fail();

  TypedNumber result;
  if (s == "pi") {
    result = {ExactValue::pi(), NumberKind::Pi};
  } else {
    auto m = match_number_surface(s, 0, true);
    if (!m) throw fail();
    result = m->number;
    std::string_view rest = s.substr(m->length);
    if (!rest.empty()) {
      // Canonical pi multiples: "p*pi", "p/q*pi".
      const bool rational_surface =
          result.kind == NumberKind::Integer || result.kind == NumberKind::Fraction;
      if (!(rational_surface && (rest == "*pi" || rest == "*" + std::string(kPi)))) throw fail();
      result = {ExactValue(result.value.rational(), true), NumberKind::Pi};
    }
  }
  if (negative) result.value = ExactValue(-result.value.rational(), result.value.has_pi());
  return result;
}

}  // namespace mwp
