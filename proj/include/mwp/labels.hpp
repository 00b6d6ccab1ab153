#pragma once

#include "mwp/analysis.hpp"
#include "mwp/equation.hpp"
#include "mwp/mapping.hpp"
#include "mwp/numeracy.hpp"
#include "mwp/record.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mwp {

// ---------------------------------------------------------------------------
// Masked language modelling

enum class MlmAction { Keep, Mask, Replace };

struct MlmStep {
  MlmAction action = MlmAction::Keep;
  std::string replacement;  // set for Replace
};

struct MlmTarget {
  std::size_t position;
  std::string original;
};

inline constexpr double kMaskRate = 0.10;
inline constexpr double kReplaceRate = 0.10;

struct MlmPlan {
  std::uint64_t seed = 0;
  std::vector<MlmStep> actions;
  std::vector<MlmTarget> targets;
  /// Replace draws that found no candidate token and became Mask.
  std::size_t fallback_masks = 0;

  nlohmann::json to_json() const;
};

/// Each token independently: Mask with p=0.10, Replace with p=0.10 (a
/// vocabulary token different from the original, drawn uniformly), Keep
/// otherwise. `replacement_vocab` must be sorted and unique. Bit-identical
/// for identical (tokens, seed, vocab).
MlmPlan mlm_plan(std::span<const std::string> tokens, std::uint64_t seed,
                 std::span<const std::string> replacement_vocab);

/// Sorted unique tokens across all lists, without placeholders.
std::vector<std::string> build_replacement_vocab(std::span<const std::vector<std::string>> token_lists);

/// Per-record seed from the run seed and the record id, independent of
/// record order and worker count.
std::uint64_t derive_record_seed(std::uint64_t seed, std::string_view record_id);

// ---------------------------------------------------------------------------
// Objective targets

int num_count_target(std::span<const NumberToken> quantities);
std::vector<int> nt_ground_targets(std::span<const NumberToken> quantities);
int at_pred_target(const TypedNumber& answer);
std::vector<int> cat_comp_targets(std::span<const int> nt_ground, int answer_type);
std::vector<int> num_m_comp_targets(std::span<const NumberToken> quantities, const ExactValue& answer);

/// Pair labels use 0-based quantity indices i < j (text order), so
/// quantity i is placeholder n(i+1).
struct OpLabel {
  int i;
  int j;
  Op op;
  friend bool operator==(const OpLabel&, const OpLabel&) = default;
};

struct DistanceLabel {
  int i;
  int j;
  int distance;
  friend bool operator==(const DistanceLabel&, const DistanceLabel&) = default;
};

/// Only quantities that occur exactly once as leaves form pairs. Pairs of
/// used quantities where either side repeats are counted in `omitted`.
struct PairTargets {
  std::vector<OpLabel> ops;
  std::vector<DistanceLabel> distances;
  std::size_t omitted = 0;
};

PairTargets pair_targets(const EquationTree& resolved, const MappedProblem& mapped);
std::vector<OpLabel> o_pred_targets(const EquationTree& resolved, const MappedProblem& mapped);
std::vector<DistanceLabel> t_pred_targets(const EquationTree& resolved, const MappedProblem& mapped);

enum class QuantityTag { Plus, Minus, None };

std::string_view to_string(QuantityTag tag);

/// Signs along the root path: descending into the right operand of a
/// subtraction flips the sign. Absent unless the tree uses only + and -
/// and no quantity repeats.
std::optional<std::vector<QuantityTag>> quantity_tagging_targets(const EquationTree& resolved,
                                                                 const MappedProblem& mapped);

// ---------------------------------------------------------------------------
// Bundle

struct Availability {
  bool self = true;
  bool weak = false;
  bool full = false;
};

struct LabelBundle {
  std::string id;
  Availability availability;
  MlmPlan mlm;
  int num_count = 0;                     // s1
  std::vector<int> nt_ground;            // s2
  std::optional<int> at_pred;            // w1
  std::vector<int> cat_comp;             // w2
  std::vector<int> num_m_comp;           // w3
  std::vector<OpLabel> o_pred;           // f1
  std::vector<DistanceLabel> t_pred;     // f2
  std::size_t omitted_pairs = 0;
  std::optional<std::vector<QuantityTag>> qt;

  nlohmann::json to_json() const;
};

/// Weak targets need a parsed answer; full targets need a mapped problem, a
/// resolved equation and an answer the equation reproduces.
LabelBundle emit_label_bundle(const MwpRecord& record, const Analysis& analysis, std::uint64_t run_seed,
                              std::span<const std::string> replacement_vocab);

}  // namespace mwp
