#include "mwp/record.hpp"

#include "mwp/numeracy.hpp"

namespace mwp {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view to_string(Origin origin) {
  switch (origin) {
    case Origin::Ape210k: return "ape210k";
    case Origin::Math23k: return "math23k";
    case Origin::Synthetic: return "synthetic";
    case Origin::Other: return "other";
  }
  return "other";
}

Origin origin_from_string(std::string_view s) {
  if (s == "ape210k") return Origin::Ape210k;
  if (s == "math23k") return Origin::Math23k;
  if (s == "synthetic") return Origin::Synthetic;
  return Origin::Other;
}

std::string strip_assignment_head(std::string_view equation) {
  std::string_view s = trim(equation);
  const auto eq = s.find('=');
  if (eq == std::string_view::npos) return std::string(s);
  const std::string_view head = trim(s.substr(0, eq));
  bool identifier = !head.empty() && ((head[0] >= 'a' && head[0] <= 'z') || (head[0] >= 'A' && head[0] <= 'Z'));
  for (char c : head) {
    identifier = identifier && ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_');
  }
  if (!identifier) return std::string(s);
  return std::string(trim(s.substr(eq + 1)));
}

MwpRecord make_record(std::string id, std::string text, std::optional<std::string> equation,
                      std::optional<std::string> answer, Origin origin) {
  MwpRecord r;
  r.id = std::move(id);
  r.tokens = tokenize_text(text);
  r.text = std::move(text);
  if (equation) {
    std::string stripped = strip_assignment_head(*equation);
    if (!stripped.empty()) r.equation = std::move(stripped);
  }
  if (answer) {
    std::string a(trim(*answer));
    if (!a.empty()) r.answer = std::move(a);
  }
  r.origin = origin;
  return r;
}

}  // namespace mwp
