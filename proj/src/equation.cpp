#include "mwp/equation.hpp"

#include "mwp/error.hpp"

#include <charconv>
#include <cmath>
#include <functional>

namespace mwp {

char op_symbol(Op op) {
  switch (op) {
    case Op::Add: return '+';
    case Op::Sub: return '-';
    case Op::Mul: return '*';
    case Op::Div: return '/';
    case Op::Pow: return '^';
  }
  return '?';
}

std::string placeholder_name(int index) { return "n" + std::to_string(index); }

// ---------------------------------------------------------------------------
// Tokenizer

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

struct OperatorSpelling {
  std::string_view text;
  Op op;
};

// Longest spellings first.
constexpr std::array<OperatorSpelling, 9> kOperatorSpellings = {{
    {"**", Op::Pow},
    {"\xC3\x97", Op::Mul},      // ×
    {"\xC3\xB7", Op::Div},      // ÷
    {"\xE2\x88\x92", Op::Sub},  // −
    {"+", Op::Add},
    {"-", Op::Sub},
    {"*", Op::Mul},
    {"/", Op::Div},
    {"^", Op::Pow},
}};

}  // namespace

std::vector<EqToken> tokenize_equation(std::string_view s) {
  std::vector<EqToken> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }

    if (auto m = match_number_surface(s, i, false)) {
      EqToken t;
      t.kind = m->number.kind == NumberKind::Pi ? EqTokenKind::Pi : EqTokenKind::Number;
      t.text = std::string(s.substr(i, m->length));
      t.position = i;
      t.number = m->number;
      t.fraction_parts = m->fraction_parts;
      out.push_back(std::move(t));
      i += m->length;
      continue;
    }

    if (c == '(' || c == ')') {
      EqToken t;
      t.kind = c == '(' ? EqTokenKind::LParen : EqTokenKind::RParen;
      t.text = std::string(1, c);
      t.position = i;
      out.push_back(std::move(t));
      ++i;
      continue;
    }

    if (c == 'n' && i + 1 < s.size() && is_digit(s[i + 1])) {
      std::size_t j = i + 1;
      while (j < s.size() && is_digit(s[j])) ++j;
      EqToken t;
      t.kind = EqTokenKind::Placeholder;
      t.text = std::string(s.substr(i, j - i));
      t.position = i;
      t.placeholder = std::stoi(std::string(s.substr(i + 1, j - i - 1)));
      if (t.placeholder <= 0) throw Error(Errc::UnknownCharacter, "placeholder index must be positive", i);
      out.push_back(std::move(t));
      i = j;
      continue;
    }

    if (s.substr(i, 2) == "pi") {
      EqToken t;
      t.kind = EqTokenKind::Pi;
      t.text = "pi";
      t.position = i;
      t.number = {ExactValue::pi(), NumberKind::Pi};
      out.push_back(std::move(t));
      i += 2;
      continue;
    }

    bool matched = false;
    for (const auto& spelling : kOperatorSpellings) {
      if (s.substr(i, spelling.text.size()) == spelling.text) {
        EqToken t;
        t.kind = EqTokenKind::Operator;
        t.text = std::string(spelling.text);
        t.position = i;
        t.op = spelling.op;
        out.push_back(std::move(t));
        i += spelling.text.size();
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw Error(Errc::UnknownCharacter,
                  "unknown character '" + std::string(1, c) + "' at position " + std::to_string(i), i);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tree

Leaf Leaf::literal(ExactValue v, NumberKind kind) {
  Leaf l;
  l.kind = LeafKind::Literal;
  l.value = std::move(v);
  l.number_kind = kind;
  return l;
}

Leaf Leaf::constant(ExactValue v) {
  Leaf l;
  l.kind = LeafKind::Constant;
  l.value = std::move(v);
  return l;
}

Leaf Leaf::placeholder_leaf(int index) {
  Leaf l;
  l.kind = LeafKind::Placeholder;
  l.placeholder = index;
  return l;
}

bool operator==(const Leaf& a, const Leaf& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == LeafKind::Placeholder) return a.placeholder == b.placeholder;
  return a.value == b.value;
}

bool operator==(const EquationTree& a, const EquationTree& b) {
  if (a.nodes_.size() != b.nodes_.size()) return false;
  for (std::size_t i = 0; i < a.nodes_.size(); ++i) {
    const Node& x = a.nodes_[i];
    const Node& y = b.nodes_[i];
    if (x.is_operator != y.is_operator) return false;
    if (x.is_operator) {
      // Pre-order storage makes child ids a function of shape.
      if (x.op != y.op || x.left != y.left || x.right != y.right) return false;
    } else if (!(x.leaf == y.leaf)) {
      return false;
    }
  }
  return true;
}

EquationTree EquationTree::single(Leaf leaf) {
  TreeBuilder b;
  return b.finish(b.add_leaf(std::move(leaf)));
}

EquationTree EquationTree::combine(Op op, const EquationTree& lhs, const EquationTree& rhs) {
  TreeBuilder b;
  auto l = b.add_tree(lhs);
  auto r = b.add_tree(rhs);
  return b.finish(b.add_operator(op, l, r));
}

std::vector<NodeId> EquationTree::leaves() const {
  std::vector<NodeId> out;
  for (NodeId i = 0; i < nodes_.size(); ++i)
    if (!nodes_[i].is_operator) out.push_back(i);
  return out;
}

std::size_t EquationTree::leaf_count() const {
  std::size_t n = 0;
  for (const auto& node : nodes_) n += node.is_operator ? 0 : 1;
  return n;
}

std::size_t EquationTree::operator_count() const { return nodes_.size() - leaf_count(); }

EquationTree EquationTree::subtree(NodeId id) const {
  TreeBuilder b;
  std::function<TreeBuilder::Handle(NodeId)> copy = [&](NodeId n) -> TreeBuilder::Handle {
    const Node& node = nodes_.at(n);
    if (!node.is_operator) return b.add_leaf(node.leaf);
    auto l = copy(node.left);
    auto r = copy(node.right);
    return b.add_operator(node.op, l, r);
  };
  return b.finish(copy(id));
}

TreeBuilder::Handle TreeBuilder::add_leaf(Leaf leaf) {
  items_.push_back(Item{false, Op::Add, 0, 0, std::move(leaf)});
  return items_.size() - 1;
}

TreeBuilder::Handle TreeBuilder::add_operator(Op op, Handle left, Handle right) {
  if (left >= items_.size() || right >= items_.size())
    throw Error(Errc::InvalidArgument, "tree builder: unknown child handle");
  items_.push_back(Item{true, op, left, right, Leaf{}});
  return items_.size() - 1;
}

TreeBuilder::Handle TreeBuilder::add_tree(const EquationTree& tree) {
  std::function<Handle(NodeId)> copy = [&](NodeId n) -> Handle {
    const Node& node = tree.node(n);
    if (!node.is_operator) return add_leaf(node.leaf);
    Handle l = copy(node.left);
    Handle r = copy(node.right);
    return add_operator(node.op, l, r);
  };
  return copy(tree.root());
}

EquationTree TreeBuilder::finish(Handle root) const {
  if (root >= items_.size()) throw Error(Errc::InvalidArgument, "tree builder: unknown root handle");
  EquationTree tree;
  // Iterative pre-order layout.
  struct Frame {
    Handle item;
    NodeId parent;
    int depth;
    bool is_right;
  };
  std::vector<Frame> stack{{root, 0, 0, false}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    const Item& it = items_[f.item];
    const NodeId id = static_cast<NodeId>(tree.nodes_.size());
    Node node;
    node.is_operator = it.is_operator;
    node.op = it.op;
    node.parent = tree.nodes_.empty() ? 0 : f.parent;
    node.depth = f.depth;
    if (!it.is_operator) node.leaf = it.leaf;
    tree.nodes_.push_back(std::move(node));
    if (!tree.nodes_.empty() && id != 0) {
      Node& parent = tree.nodes_[f.parent];
      (f.is_right ? parent.right : parent.left) = id;
    }
    if (it.is_operator) {
      stack.push_back({it.right, id, f.depth + 1, true});
      stack.push_back({it.left, id, f.depth + 1, false});
    }
  }
  return tree;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class StackOp { Binary, Negate, LParen };

struct PendingOp {
  StackOp kind;
  Op op;
  std::size_t position;
};

int precedence(const PendingOp& p) {
  if (p.kind == StackOp::Negate) return 25;
  switch (p.op) {
    case Op::Add:
    case Op::Sub: return 10;
    case Op::Mul:
    case Op::Div: return 20;
    case Op::Pow: return 30;
  }
  return 0;
}

bool right_associative(const PendingOp& p) { return p.kind == StackOp::Negate || p.op == Op::Pow; }

Leaf leaf_from_token(const EqToken& t) {
  switch (t.kind) {
    case EqTokenKind::Placeholder: return Leaf::placeholder_leaf(t.placeholder);
    case EqTokenKind::Pi: return Leaf::literal(ExactValue::pi(), NumberKind::Pi);
    default: {
      Leaf l = Leaf::literal(t.number.value, t.number.kind);
      l.fraction_parts = t.fraction_parts;
      return l;
    }
  }
}

[[noreturn]] void syntax_error(std::size_t pos, std::string_view expected, std::string_view found) {
  throw Error(Errc::SyntaxError,
              "syntax error at position " + std::to_string(pos) + ": expected " + std::string(expected) +
                  ", found " + std::string(found),
              pos);
}

}  // namespace

EquationTree parse_equation(std::span<const EqToken> tokens) {
  TreeBuilder builder;
  std::vector<TreeBuilder::Handle> operands;
  std::vector<PendingOp> ops;

  auto reduce = [&]() {
    const PendingOp top = ops.back();
    ops.pop_back();
    // Negate pushed a literal 0 ahead of its operand, so both cases are binary.
    auto rhs = operands.back();
    operands.pop_back();
    auto lhs = operands.back();
    operands.pop_back();
    operands.push_back(builder.add_operator(top.kind == StackOp::Negate ? Op::Sub : top.op, lhs, rhs));
  };

  constexpr std::string_view kOperand = "{number, placeholder, '(', unary '-'}";
  constexpr std::string_view kOperator = "{operator, ')'}";

  bool expect_operand = true;
  std::size_t end_pos = 0;
  for (const EqToken& t : tokens) {
    end_pos = t.position + t.text.size();
    switch (t.kind) {
      case EqTokenKind::Number:
      case EqTokenKind::Placeholder:
      case EqTokenKind::Pi:
        if (!expect_operand) syntax_error(t.position, kOperator, "'" + t.text + "'");
        operands.push_back(builder.add_leaf(leaf_from_token(t)));
        expect_operand = false;
        break;
      case EqTokenKind::LParen:
        if (!expect_operand) syntax_error(t.position, kOperator, "'('");
        ops.push_back({StackOp::LParen, Op::Add, t.position});
        break;
      case EqTokenKind::RParen: {
        if (expect_operand) syntax_error(t.position, kOperand, "')'");
        while (!ops.empty() && ops.back().kind != StackOp::LParen) reduce();
        if (ops.empty()) {
          throw Error(Errc::UnbalancedParentheses,
                      "unmatched ')' at position " + std::to_string(t.position), t.position);
        }
        ops.pop_back();
        break;
      }
      case EqTokenKind::Operator: {
        if (expect_operand) {
          if (t.op == Op::Sub) {
            operands.push_back(builder.add_leaf(Leaf::literal(ExactValue(0))));
            // Prefix operators never reduce what is already pending.
            ops.push_back({StackOp::Negate, Op::Sub, t.position});
            break;
          }
          if (t.op == Op::Add) break;  // unary plus
          syntax_error(t.position, kOperand, "'" + t.text + "'");
        }
        const PendingOp incoming{StackOp::Binary, t.op, t.position};
        const int p = precedence(incoming);
        while (!ops.empty() && ops.back().kind != StackOp::LParen) {
          const int q = precedence(ops.back());
          if (q > p || (q == p && !right_associative(incoming))) {
            reduce();
          } else {
            break;
          }
        }
        ops.push_back(incoming);
        expect_operand = true;
        break;
      }
    }
  }

  if (tokens.empty()) syntax_error(0, kOperand, "end of input");
  if (expect_operand) syntax_error(end_pos, kOperand, "end of input");
  while (!ops.empty()) {
    if (ops.back().kind == StackOp::LParen) {
      throw Error(Errc::UnbalancedParentheses,
                  "unclosed '(' at position " + std::to_string(ops.back().position), ops.back().position);
    }
    reduce();
  }
  return builder.finish(operands.back());
}

EquationTree parse_equation(std::string_view s) {
  const auto tokens = tokenize_equation(s);
  return parse_equation(tokens);
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

std::string render_leaf(const Leaf& leaf, Notation notation) {
  if (leaf.kind == LeafKind::Placeholder) return placeholder_name(leaf.placeholder);
  std::string s = leaf.value.canonical();
  if (notation == Notation::Infix && !leaf.value.has_pi() && !leaf.value.is_integer()) return "(" + s + ")";
  return s;
}

void serialize_into(const EquationTree& tree, NodeId id, Notation notation, std::vector<std::string>& out) {
  const Node& n = tree.node(id);
  if (!n.is_operator) {
    out.push_back(render_leaf(n.leaf, notation));
    return;
  }
  if (notation == Notation::Prefix) {
    out.emplace_back(1, op_symbol(n.op));
    serialize_into(tree, n.left, notation, out);
    serialize_into(tree, n.right, notation, out);
  } else {
    out.emplace_back("(");
    serialize_into(tree, n.left, notation, out);
    out.emplace_back(1, op_symbol(n.op));
    serialize_into(tree, n.right, notation, out);
    out.emplace_back(")");
  }
}

std::optional<Op> op_from_symbol(std::string_view s) {
  if (s.size() != 1) return std::nullopt;
  for (Op op : kOperators)
    if (op_symbol(op) == s[0]) return op;
  return std::nullopt;
}

Leaf leaf_from_prefix_token(std::string_view tok, std::size_t index) {
  if (tok == "pi" || tok == "\xCF\x80") return Leaf::literal(ExactValue::pi(), NumberKind::Pi);
  if (tok.size() > 1 && tok[0] == 'n' && is_digit(tok[1])) {
    const auto toks = tokenize_equation(tok);
    if (toks.size() == 1 && toks[0].kind == EqTokenKind::Placeholder)
      return Leaf::placeholder_leaf(toks[0].placeholder);
  }
  // Canonical pi multiples ("2*pi", "1/2*pi") are single prefix tokens.
  if (tok.ends_with("*pi")) {
    const TypedNumber n = parse_answer(tok);
    return Leaf::literal(n.value, NumberKind::Pi);
  }
  auto m = match_number_surface(tok, 0, true);
  if (!m || m->length != tok.size()) {
    throw Error(Errc::SyntaxError, "unrecognized prefix token '" + std::string(tok) + "'", index);
  }
  Leaf l = Leaf::literal(m->number.value, m->number.kind);
  l.fraction_parts = m->fraction_parts;
  return l;
}

}  // namespace

std::vector<std::string> serialize(const EquationTree& tree, Notation notation) {
  std::vector<std::string> out;
  out.reserve(tree.size() * (notation == Notation::Infix ? 2 : 1));
  serialize_into(tree, tree.root(), notation, out);
  return out;
}

std::string to_string(const EquationTree& tree, Notation notation) {
  const auto tokens = serialize(tree, notation);
  auto is_integer_token = [](const std::string& t) {
    return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return is_digit(c); });
  };
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (notation == Notation::Prefix && i > 0) out += ' ';
    // "(12/11)" would read back as one fraction literal.
    const bool spaced = notation == Notation::Infix && tokens[i] == "/" && i > 0 && i + 1 < tokens.size() &&
                        is_integer_token(tokens[i - 1]) && is_integer_token(tokens[i + 1]);
    out += spaced ? " / " : tokens[i];
  }
  return out;
}

EquationTree parse_prefix(std::span<const std::string> tokens) {
  TreeBuilder builder;
  std::size_t next = 0;
  std::function<TreeBuilder::Handle()> parse_node = [&]() -> TreeBuilder::Handle {
    if (next >= tokens.size()) {
      throw Error(Errc::PrefixUnderflow,
                  "prefix expression ended after " + std::to_string(tokens.size()) + " tokens", next);
    }
    const std::size_t here = next++;
    if (auto op = op_from_symbol(tokens[here])) {
      auto l = parse_node();
      auto r = parse_node();
      return builder.add_operator(*op, l, r);
    }
    return builder.add_leaf(leaf_from_prefix_token(tokens[here], here));
  };
  auto root = parse_node();
  if (next != tokens.size()) {
    throw Error(Errc::SyntaxError, "trailing tokens after complete prefix expression at index " +
                                       std::to_string(next), next);
  }
  return builder.finish(root);
}

EquationTree parse_prefix(std::string_view space_separated) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < space_separated.size()) {
    while (i < space_separated.size() && space_separated[i] == ' ') ++i;
    std::size_t j = i;
    while (j < space_separated.size() && space_separated[j] != ' ') ++j;
    if (j > i) tokens.emplace_back(space_separated.substr(i, j - i));
    i = j;
  }
  return parse_prefix(tokens);
}

// ---------------------------------------------------------------------------
// Evaluation

std::string EvalValue::render() const {
  if (exact()) return exact_value().canonical();
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), std::get<double>(v_));
  return std::string(buf, res.ptr);
}

namespace {

EvalValue exact_power(const Rational& base, const Rational& exponent) {
  const BigInt e = boost::multiprecision::numerator(exponent);
  const BigInt num = boost::multiprecision::numerator(base);
  const BigInt den = boost::multiprecision::denominator(base);
  if (num == 0) {
    if (e < 0) throw Error(Errc::ZeroToNegativePower, "zero raised to a negative power");
    return ExactValue(e == 0 ? 1 : 0);
  }
  const bool unit = den == 1 && (num == 1 || num == -1);
  if (unit) {
    const bool odd = (e % 2) != 0;
    return ExactValue(num == -1 && odd ? -1 : 1);
  }
  const std::size_t base_bits = std::max(bit_length(num), bit_length(den));
  const BigInt magnitude = boost::multiprecision::abs(e);
  if (magnitude > BigInt(kMaxPowerBits) || magnitude * base_bits > BigInt(kMaxPowerBits)) {
    throw Error(Errc::NumericOverflow, "integer power exceeds " + std::to_string(kMaxPowerBits) + " bits");
  }
  const unsigned k = magnitude.convert_to<unsigned>();
  BigInt p_num = boost::multiprecision::pow(num, k);
  BigInt p_den = boost::multiprecision::pow(den, k);
  if (e < 0) std::swap(p_num, p_den);
  return ExactValue::fraction(p_num, p_den);
}

double checked(double v) {
  if (!std::isfinite(v)) throw Error(Errc::NonFiniteResult, "non-finite intermediate result");
  return v;
}

EvalValue apply(Op op, const EvalValue& a, const EvalValue& b) {
  if (a.exact() && b.exact()) {
    const Rational& x = a.exact_value().rational();
    const Rational& y = b.exact_value().rational();
    switch (op) {
      case Op::Add: return ExactValue(x + y);
      case Op::Sub: return ExactValue(x - y);
      case Op::Mul: return ExactValue(x * y);
      case Op::Div:
        if (y == 0) throw Error(Errc::DivisionByZero, "division by zero");
        return ExactValue(x / y);
      case Op::Pow:
        if (boost::multiprecision::denominator(y) == 1) return exact_power(x, y);
        if (x == 0 && y < 0) throw Error(Errc::ZeroToNegativePower, "zero raised to a negative power");
        return checked(std::pow(x.convert_to<double>(), y.convert_to<double>()));
    }
  }
  const double x = a.to_double();
  const double y = b.to_double();
  switch (op) {
    case Op::Add: return checked(x + y);
    case Op::Sub: return checked(x - y);
    case Op::Mul: return checked(x * y);
    case Op::Div:
      if (y == 0.0) throw Error(Errc::DivisionByZero, "division by zero");
      return checked(x / y);
    case Op::Pow:
      if (x == 0.0 && y < 0.0) throw Error(Errc::ZeroToNegativePower, "zero raised to a negative power");
      return checked(std::pow(x, y));
  }
  return 0.0;
}

EvalValue leaf_value(const Leaf& leaf, std::span<const ExactValue> bindings) {
  const ExactValue* v = &leaf.value;
  if (leaf.kind == LeafKind::Placeholder) {
    if (leaf.placeholder <= 0 || static_cast<std::size_t>(leaf.placeholder) > bindings.size()) {
      throw Error(Errc::UnboundPlaceholder, "unbound placeholder " + placeholder_name(leaf.placeholder));
    }
    v = &bindings[leaf.placeholder - 1];
  }
  if (v->has_pi()) return v->to_double();
  return *v;
}

EvalValue eval_node(const EquationTree& tree, NodeId id, std::span<const ExactValue> bindings) {
  const Node& n = tree.node(id);
  if (!n.is_operator) return leaf_value(n.leaf, bindings);
  EvalValue l = eval_node(tree, n.left, bindings);
  EvalValue r = eval_node(tree, n.right, bindings);
  return apply(n.op, l, r);
}

}  // namespace

EvalValue evaluate(const EquationTree& tree, std::span<const ExactValue> bindings) {
  return eval_node(tree, tree.root(), bindings);
}

AnswerCheck check_answer(const EquationTree& tree, std::span<const ExactValue> bindings,
                         const ExactValue& answer, double tolerance) {
  AnswerCheck result;
  try {
    result.value = evaluate(tree, bindings);
  } catch (const Error& e) {
    result.reason = std::string(errc_name(e.code())) + ": " + e.what();
    return result;
  }
  const EvalValue& v = *result.value;
  if (v.exact() && !answer.has_pi()) {
    result.matches = v.exact_value() == answer;
  } else {
    result.matches = std::abs(v.to_double() - answer.to_double()) <= tolerance;
  }
  if (!result.matches) {
    result.reason = "equation evaluates to " + v.render() + ", answer is " + answer.canonical();
  }
  return result;
}

// ---------------------------------------------------------------------------
// Structure

std::vector<LeafDepth> leaf_depths(const EquationTree& tree) {
  std::vector<LeafDepth> out;
  for (NodeId id : tree.leaves()) out.push_back({id, tree.depth(id)});
  return out;
}

NodeId lowest_common_ancestor(const EquationTree& tree, NodeId a, NodeId b) {
  if (a >= tree.size() || b >= tree.size()) throw Error(Errc::LeafNotFound, "node id out of range");
  while (tree.depth(a) > tree.depth(b)) a = tree.node(a).parent;
  while (tree.depth(b) > tree.depth(a)) b = tree.node(b).parent;
  while (a != b) {
    a = tree.node(a).parent;
    b = tree.node(b).parent;
  }
  return a;
}

NodeId find_leaf(const EquationTree& tree, Placeholder p) {
  std::optional<NodeId> found;
  for (NodeId id : tree.leaves()) {
    const Leaf& leaf = tree.node(id).leaf;
    if (leaf.kind == LeafKind::Placeholder && leaf.placeholder == p.index) {
      if (found) throw Error(Errc::AmbiguousLeaf, placeholder_name(p.index) + " occurs more than once");
      found = id;
    }
  }
  if (!found) throw Error(Errc::LeafNotFound, placeholder_name(p.index) + " does not occur in the tree");
  return *found;
}

Op pair_operator(const EquationTree& tree, NodeId a, NodeId b) {
  if (a >= tree.size() || b >= tree.size() || tree.is_operator(a) || tree.is_operator(b)) {
    throw Error(Errc::LeafNotFound, "pair_operator expects two leaves");
  }
  if (a == b) throw Error(Errc::InvalidArgument, "pair_operator expects two distinct leaves");
  return tree.node(lowest_common_ancestor(tree, a, b)).op;
}

Op pair_operator(const EquationTree& tree, Placeholder a, Placeholder b) {
  return pair_operator(tree, find_leaf(tree, a), find_leaf(tree, b));
}

int tree_distance(const EquationTree& tree, NodeId a, NodeId b) {
  if (a >= tree.size() || b >= tree.size()) throw Error(Errc::LeafNotFound, "node id out of range");
  return tree.depth(a) - tree.depth(b);
}

int tree_distance(const EquationTree& tree, Placeholder a, Placeholder b) {
  return tree_distance(tree, find_leaf(tree, a), find_leaf(tree, b));
}

}  // namespace mwp
