#include "mwp/mapping.hpp"

#include "mwp/error.hpp"

#include <functional>

namespace mwp {

std::vector<ExactValue> MappedProblem::bindings() const {
  std::vector<ExactValue> out;
  out.reserve(table.size());
  for (const auto& e : table) out.push_back(e.quantity.value);
  return out;
}

Vocab Vocab::standard(int k) {
  Vocab v;
  v.k = k;
  v.constants = {ExactValue(1), ExactValue::pi()};
  return v;
}

bool Vocab::is_constant(const ExactValue& v) const {
  for (const auto& c : constants)
    if (c == v) return true;
  return false;
}

MappedProblem map_numbers(std::span<const std::string> tokens, std::span<const NumberToken> quantities,
                          int k) {
  if (quantities.size() > static_cast<std::size_t>(k)) {
    throw Error(Errc::TooManyQuantities, std::to_string(quantities.size()) + " quantities exceed k=" +
                                             std::to_string(k));
  }
  MappedProblem out;
  out.k = k;
  out.tokens.assign(tokens.begin(), tokens.end());
  for (std::size_t i = 0; i < quantities.size(); ++i) {
    const NumberToken& q = quantities[i];
    if (q.position >= out.tokens.size()) {
      throw Error(Errc::InvalidArgument, "quantity position " + std::to_string(q.position) + " out of range");
    }
    std::string ph = placeholder_name(static_cast<int>(i) + 1);
    out.tokens[q.position] = ph;
    out.table.push_back({std::move(ph), q});
  }
  return out;
}

namespace {

class Resolver {
 public:
  Resolver(const MappedProblem& mapped, const Vocab& vocab) : mapped_(mapped), vocab_(vocab) {}

  TreeBuilder::Handle resolve(const EquationTree& tree, NodeId id) {
    const Node& n = tree.node(id);
    if (!n.is_operator) return resolve_leaf(n.leaf);

    if (n.op == Op::Div && is_integer_literal(tree, n.left) && is_integer_literal(tree, n.right)) {
      // Try leaf by leaf first; fall back to matching the quotient.
      try {
        auto l = resolve_leaf(tree.node(n.left).leaf);
        auto r = resolve_leaf(tree.node(n.right).leaf);
        return builder_.add_operator(n.op, l, r);
      } catch (const Error& e) {
        if (e.code() != Errc::ExternalConstant) throw;
        const Rational& a = tree.node(n.left).leaf.value.rational();
        const Rational& b = tree.node(n.right).leaf.value.rational();
        if (b != 0) {
          if (auto h = match(ExactValue(a / b))) return *h;
        }
        throw;
      }
    }

    auto l = resolve(tree, n.left);
    auto r = resolve(tree, n.right);
    return builder_.add_operator(n.op, l, r);
  }

  EquationTree finish(TreeBuilder::Handle root) const { return builder_.finish(root); }

 private:
  static bool is_integer_literal(const EquationTree& tree, NodeId id) {
    const Node& n = tree.node(id);
    return !n.is_operator && n.leaf.kind == LeafKind::Literal && n.leaf.number_kind == NumberKind::Integer;
  }

  std::optional<TreeBuilder::Handle> match(const ExactValue& v) {
    for (std::size_t i = 0; i < mapped_.table.size(); ++i) {
      if (mapped_.table[i].quantity.value == v) {
        return builder_.add_leaf(Leaf::placeholder_leaf(static_cast<int>(i) + 1));
      }
    }
    if (vocab_.is_constant(v)) return builder_.add_leaf(Leaf::constant(v));
    return std::nullopt;
  }

  TreeBuilder::Handle resolve_leaf(const Leaf& leaf) {
    if (leaf.kind != LeafKind::Literal) return builder_.add_leaf(leaf);
    if (auto h = match(leaf.value)) return *h;
    if (leaf.fraction_parts) {
      const auto& [num, den] = *leaf.fraction_parts;
      auto a = match(ExactValue(Rational(num)));
      auto b = match(ExactValue(Rational(den)));
      if (a && b) return builder_.add_operator(Op::Div, *a, *b);
    }
    throw Error(Errc::ExternalConstant, "external constant " + leaf.value.canonical());
  }

  const MappedProblem& mapped_;
  const Vocab& vocab_;
  TreeBuilder builder_;
};

}  // namespace

EquationTree resolve_equation_numbers(const EquationTree& tree, const MappedProblem& mapped,
                                      const Vocab& vocab) {
  Resolver r(mapped, vocab);
  auto root = r.resolve(tree, tree.root());
  return r.finish(root);
}

nlohmann::json to_json(const MappedProblem& mapped) {
  nlohmann::json map = nlohmann::json::array();
  for (const auto& e : mapped.table) {
    map.push_back({{"ph", e.placeholder},
                   {"surface", e.quantity.surface},
                   {"value", e.quantity.value.canonical()},
                   {"pos", e.quantity.position}});
  }
  return {{"tokens", mapped.tokens}, {"map", std::move(map)}, {"k", mapped.k}};
}

}  // namespace mwp
