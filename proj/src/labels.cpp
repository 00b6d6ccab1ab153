#include "mwp/labels.hpp"

#include "mwp/error.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>

namespace mwp {

using nlohmann::json;

// ---------------------------------------------------------------------------
// MLM

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

// std::mt19937_64's output sequence is fixed by the standard; the standard
// distributions are not, so both draws are done by hand.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

bool is_placeholder(std::string_view tok) {
  if (tok.size() < 2 || tok[0] != 'n') return false;
  return std::all_of(tok.begin() + 1, tok.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

json MlmPlan::to_json() const {
  json actions_json = json::array();
  for (const auto& a : actions) {
    switch (a.action) {
      case MlmAction::Keep: actions_json.push_back("K"); break;
      case MlmAction::Mask: actions_json.push_back("M"); break;
      case MlmAction::Replace: actions_json.push_back({{"R", a.replacement}}); break;
    }
  }
  json targets_json = json::array();
  for (const auto& t : targets) targets_json.push_back({{"pos", t.position}, {"token", t.original}});
  return {{"seed", seed}, {"actions", std::move(actions_json)}, {"targets", std::move(targets_json)},
          {"fallback_masks", fallback_masks}};
}

MlmPlan mlm_plan(std::span<const std::string> tokens, std::uint64_t seed,
                 std::span<const std::string> replacement_vocab) {
  MlmPlan plan;
  plan.seed = seed;
  plan.actions.reserve(tokens.size());
  std::mt19937_64 rng(seed);

  for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
    const std::string& tok = tokens[pos];
    const double u = unit_draw(rng);
    MlmStep step;
    if (u < kMaskRate) {
      step.action = MlmAction::Mask;
    } else if (u < kMaskRate + kReplaceRate) {
      auto it = std::lower_bound(replacement_vocab.begin(), replacement_vocab.end(), tok);
      const bool contains = it != replacement_vocab.end() && *it == tok;
      const std::size_t skip = static_cast<std::size_t>(it - replacement_vocab.begin());
      const std::size_t candidates = replacement_vocab.size() - (contains ? 1 : 0);
      if (candidates == 0) {
        step.action = MlmAction::Mask;
        ++plan.fallback_masks;
      } else {
        std::size_t idx = uniform_below(rng, candidates);
        if (contains && idx >= skip) ++idx;
        step.action = MlmAction::Replace;
        step.replacement = replacement_vocab[idx];
      }
    }
    if (step.action != MlmAction::Keep) plan.targets.push_back({pos, tok});
    plan.actions.push_back(std::move(step));
  }
  return plan;
}

std::vector<std::string> build_replacement_vocab(std::span<const std::vector<std::string>> token_lists) {
  std::vector<std::string> vocab;
  for (const auto& list : token_lists)
    for (const auto& tok : list)
      if (!is_placeholder(tok)) vocab.push_back(tok);
  std::sort(vocab.begin(), vocab.end());
  vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());
  return vocab;
}

std::uint64_t derive_record_seed(std::uint64_t seed, std::string_view record_id) {
  return splitmix64(seed ^ fnv1a64(record_id));
}

// ---------------------------------------------------------------------------
// Objective targets

int num_count_target(std::span<const NumberToken> quantities) { return static_cast<int>(quantities.size()); }

std::vector<int> nt_ground_targets(std::span<const NumberToken> quantities) {
  std::vector<int> out;
  out.reserve(quantities.size());
  for (const auto& q : quantities) out.push_back(number_type(q) == NumberType::NonInteger ? 1 : 0);
  return out;
}

int at_pred_target(const TypedNumber& answer) {
  return number_type(answer.kind) == NumberType::NonInteger ? 1 : 0;
}

std::vector<int> cat_comp_targets(std::span<const int> nt_ground, int answer_type) {
  std::vector<int> out;
  out.reserve(nt_ground.size());
  for (int y : nt_ground) out.push_back(y ^ answer_type);
  return out;
}

std::vector<int> num_m_comp_targets(std::span<const NumberToken> quantities, const ExactValue& answer) {
  std::vector<int> out;
  out.reserve(quantities.size());
  for (const auto& q : quantities) out.push_back(compare_magnitude(q.value, answer) == Ordering::Greater ? 1 : 0);
  return out;
}

namespace {

// Placeholder index (1-based) -> leaf occurrences.
std::map<int, std::vector<NodeId>> placeholder_leaves(const EquationTree& tree) {
  std::map<int, std::vector<NodeId>> out;
  for (NodeId id : tree.leaves()) {
    const Leaf& leaf = tree.node(id).leaf;
    if (leaf.kind == LeafKind::Placeholder) out[leaf.placeholder].push_back(id);
  }
  return out;
}

}  // namespace

PairTargets pair_targets(const EquationTree& resolved, const MappedProblem& mapped) {
  PairTargets out;
  const auto occurrences = placeholder_leaves(resolved);
  const int n = static_cast<int>(mapped.table.size());
  for (int i = 0; i < n; ++i) {
    auto a = occurrences.find(i + 1);
    if (a == occurrences.end()) continue;
    for (int j = i + 1; j < n; ++j) {
      auto b = occurrences.find(j + 1);
      if (b == occurrences.end()) continue;
      if (a->second.size() != 1 || b->second.size() != 1) {
        ++out.omitted;
        continue;
      }
      const NodeId li = a->second.front();
      const NodeId lj = b->second.front();
      out.ops.push_back({i, j, pair_operator(resolved, li, lj)});
      out.distances.push_back({i, j, tree_distance(resolved, li, lj)});
    }
  }
  return out;
}

std::vector<OpLabel> o_pred_targets(const EquationTree& resolved, const MappedProblem& mapped) {
  return pair_targets(resolved, mapped).ops;
}

std::vector<DistanceLabel> t_pred_targets(const EquationTree& resolved, const MappedProblem& mapped) {
  return pair_targets(resolved, mapped).distances;
}

std::string_view to_string(QuantityTag tag) {
  switch (tag) {
    case QuantityTag::Plus: return "+";
    case QuantityTag::Minus: return "-";
    case QuantityTag::None: return "None";
  }
  return "?";
}

std::optional<std::vector<QuantityTag>> quantity_tagging_targets(const EquationTree& resolved,
                                                                 const MappedProblem& mapped) {
  for (NodeId id = 0; id < resolved.size(); ++id) {
    const Node& n = resolved.node(id);
    if (n.is_operator && n.op != Op::Add && n.op != Op::Sub) return std::nullopt;
  }
  for (const auto& [ph, leaves] : placeholder_leaves(resolved)) {
    if (leaves.size() > 1) return std::nullopt;
  }

  std::vector<QuantityTag> tags(mapped.table.size(), QuantityTag::None);
  // Pre-order storage: a node's sign is final before its children are seen.
  std::vector<bool> negative(resolved.size(), false);
  for (NodeId id = 0; id < resolved.size(); ++id) {
    const Node& n = resolved.node(id);
    if (n.is_operator) {
      negative[n.left] = negative[id];
      negative[n.right] = n.op == Op::Sub ? !negative[id] : negative[id];
    } else if (n.leaf.kind == LeafKind::Placeholder) {
      const int idx = n.leaf.placeholder - 1;
      if (idx < 0 || idx >= static_cast<int>(tags.size())) return std::nullopt;
      tags[idx] = negative[id] ? QuantityTag::Minus : QuantityTag::Plus;
    }
  }
  return tags;
}

// ---------------------------------------------------------------------------
// Bundle

json LabelBundle::to_json() const {
  json f1 = nullptr;
  json f2 = nullptr;
  if (availability.full) {
    f1 = json::array();
    for (const auto& l : o_pred) f1.push_back({{"i", l.i}, {"j", l.j}, {"op", std::string(1, op_symbol(l.op))}});
    f2 = json::array();
    for (const auto& l : t_pred) f2.push_back({{"i", l.i}, {"j", l.j}, {"d", l.distance}});
  }
  json qt_json = nullptr;
  if (qt) {
    qt_json = json::array();
    for (QuantityTag t : *qt) qt_json.push_back(to_string(t));
  }
  json j;
  j["id"] = id;
  j["availability"] = {{"self", availability.self}, {"weak", availability.weak}, {"full", availability.full}};
  j["mlm"] = mlm.to_json();
  j["s1"] = num_count;
  j["s2"] = nt_ground;
  j["w1"] = availability.weak ? json(*at_pred) : json(nullptr);
  j["w2"] = availability.weak ? json(cat_comp) : json(nullptr);
  j["w3"] = availability.weak ? json(num_m_comp) : json(nullptr);
  j["f1"] = std::move(f1);
  j["f2"] = std::move(f2);
  j["qt"] = std::move(qt_json);
  j["omitted_pairs"] = availability.full ? json(omitted_pairs) : json(nullptr);
  return j;
}

LabelBundle emit_label_bundle(const MwpRecord& record, const Analysis& analysis, std::uint64_t run_seed,
                              std::span<const std::string> replacement_vocab) {
  LabelBundle b;
  b.id = record.id;
  b.mlm = mlm_plan(analysis.placeholder_tokens, derive_record_seed(run_seed, record.id), replacement_vocab);
  b.num_count = num_count_target(analysis.quantities);
  b.nt_ground = nt_ground_targets(analysis.quantities);

  if (analysis.answer) {
    b.availability.weak = true;
    b.at_pred = at_pred_target(*analysis.answer);
    b.cat_comp = cat_comp_targets(b.nt_ground, *b.at_pred);
    b.num_m_comp = num_m_comp_targets(analysis.quantities, analysis.answer->value);
  }

  if (analysis.answer && analysis.mapped && analysis.resolved && analysis.answer_consistent()) {
    b.availability.full = true;
    PairTargets pairs = pair_targets(*analysis.resolved, *analysis.mapped);
    b.o_pred = std::move(pairs.ops);
    b.t_pred = std::move(pairs.distances);
    b.omitted_pairs = pairs.omitted;
    b.qt = quantity_tagging_targets(*analysis.resolved, *analysis.mapped);
  }
  return b;
}

}  // namespace mwp
