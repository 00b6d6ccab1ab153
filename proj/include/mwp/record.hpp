#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mwp {

enum class Origin { Ape210k, Math23k, Synthetic, Other };

std::string_view to_string(Origin origin);
Origin origin_from_string(std::string_view s);

struct MwpRecord {
  std::string id;
  std::string text;
  std::vector<std::string> tokens;  // tokenize_text(text)
  std::optional<std::string> equation;  // assignment head stripped
  std::optional<std::string> answer;
  Origin origin = Origin::Other;
};

/// Removes a leading "x=" style head. Strings without one are returned
/// trimmed but otherwise unchanged.
std::string strip_assignment_head(std::string_view equation);

/// Builds a record, tokenizing `text` and normalizing the equation. An
/// equation that is empty after stripping is treated as absent.
MwpRecord make_record(std::string id, std::string text, std::optional<std::string> equation = std::nullopt,
                      std::optional<std::string> answer = std::nullopt, Origin origin = Origin::Other);

}  // namespace mwp
