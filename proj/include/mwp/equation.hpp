#pragma once

#include "mwp/exact_value.hpp"
#include "mwp/numeracy.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mwp {

enum class Op : std::uint8_t { Add, Sub, Mul, Div, Pow };

inline constexpr std::array<Op, 5> kOperators = {Op::Add, Op::Sub, Op::Mul, Op::Div, Op::Pow};

/// Wire spelling: "+ - * / ^".
char op_symbol(Op op);
/// Class index 0..4 in the order + - * / ^.
inline int op_index(Op op) { return static_cast<int>(op); }

// ---------------------------------------------------------------------------
// Tokens

enum class EqTokenKind { Number, Placeholder, Pi, Operator, LParen, RParen };

struct EqToken {
  EqTokenKind kind = EqTokenKind::Number;
  std::string text;
  std::size_t position = 0;  // byte offset in the source string
  Op op = Op::Add;
  TypedNumber number;
  std::optional<std::pair<BigInt, BigInt>> fraction_parts;
  int placeholder = 0;
};

/// Splits an equation (assignment head already stripped) into tokens.
/// "(a/b)" and "a(b/c)" are single number tokens; "**", "×", "÷" and "−"
/// are accepted operator spellings; "n<digits>" is a placeholder.
/// Throws Errc::UnknownCharacter.
std::vector<EqToken> tokenize_equation(std::string_view s);

// ---------------------------------------------------------------------------
// Tree

enum class LeafKind { Placeholder, Constant, Literal };

struct Placeholder {
  int index = 0;  // 1-based: n1, n2, ...
};

std::string placeholder_name(int index);

struct Leaf {
  LeafKind kind = LeafKind::Literal;
  int placeholder = 0;
  ExactValue value;
  // Surface details of literals; ignored by equality.
  NumberKind number_kind = NumberKind::Integer;
  std::optional<std::pair<BigInt, BigInt>> fraction_parts;

  static Leaf literal(ExactValue v, NumberKind kind = NumberKind::Integer);
  static Leaf constant(ExactValue v);
  static Leaf placeholder_leaf(int index);

  friend bool operator==(const Leaf& a, const Leaf& b);
};

using NodeId = std::uint32_t;

struct Node {
  bool is_operator = false;
  Op op = Op::Add;
  NodeId left = 0;
  NodeId right = 0;
  NodeId parent = 0;  // root is its own parent
  int depth = 0;
  Leaf leaf;
};

class TreeBuilder;

/// Strictly binary expression tree. Nodes are stored in pre-order, so node 0
/// is the root and leaves appear left to right.
class EquationTree {
 public:
  static EquationTree single(Leaf leaf);
  static EquationTree combine(Op op, const EquationTree& lhs, const EquationTree& rhs);

  NodeId root() const { return 0; }
  std::size_t size() const { return nodes_.size(); }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  bool is_operator(NodeId id) const { return node(id).is_operator; }
  int depth(NodeId id) const { return node(id).depth; }

  std::vector<NodeId> leaves() const;
  std::size_t leaf_count() const;
  std::size_t operator_count() const;
  /// Copy of the subtree rooted at `id`.
  EquationTree subtree(NodeId id) const;

  friend bool operator==(const EquationTree& a, const EquationTree& b);

 private:
  friend class TreeBuilder;
  std::vector<Node> nodes_;
};

/// Arena used while assembling a tree bottom-up.
class TreeBuilder {
 public:
  using Handle = std::size_t;

  Handle add_leaf(Leaf leaf);
  Handle add_operator(Op op, Handle left, Handle right);
  Handle add_tree(const EquationTree& tree);
  EquationTree finish(Handle root) const;

 private:
  struct Item {
    bool is_operator;
    Op op;
    Handle left, right;
    Leaf leaf;
  };
  std::vector<Item> items_;
};

/// Shunting-yard parse. Precedence ^ > {*,/} > {+,-}; ^ is right
/// associative, the rest left associative; unary minus becomes (0 - x).
/// Throws Errc::SyntaxError or Errc::UnbalancedParentheses.
EquationTree parse_equation(std::span<const EqToken> tokens);
EquationTree parse_equation(std::string_view s);

enum class Notation { Infix, Prefix };

/// Infix output is fully parenthesized; fraction literals are rendered as
/// one "(p/q)" token. Prefix output uses canonical number renderings.
std::vector<std::string> serialize(const EquationTree& tree, Notation notation);
/// Infix tokens concatenated (a division of two integer literals is written
/// "a / b" so it does not read back as a fraction), prefix tokens joined by
/// single spaces.
std::string to_string(const EquationTree& tree, Notation notation);

/// Throws Errc::PrefixUnderflow on truncated input, Errc::SyntaxError on
/// trailing or unrecognized tokens.
EquationTree parse_prefix(std::span<const std::string> tokens);
EquationTree parse_prefix(std::string_view space_separated);

// ---------------------------------------------------------------------------
// Evaluation

/// Either an exact rational (pi-free path) or an approximate binary64 value.
class EvalValue {
 public:
  EvalValue(ExactValue v) : v_(std::move(v)) {}  // NOLINT
  EvalValue(double d) : v_(d) {}                  // NOLINT

  bool exact() const { return std::holds_alternative<ExactValue>(v_); }
  const ExactValue& exact_value() const { return std::get<ExactValue>(v_); }
  double to_double() const { return exact() ? exact_value().to_double() : std::get<double>(v_); }
  /// Canonical rendering when exact, shortest round-trip decimal otherwise.
  std::string render() const;

  friend bool operator==(const EvalValue& a, const EvalValue& b) { return a.v_ == b.v_; }

 private:
  std::variant<ExactValue, double> v_;
};

/// Integer powers are exact as long as the result stays under this many bits.
inline constexpr std::size_t kMaxPowerBits = 1u << 16;

/// Evaluates the tree. `bindings[i]` is the value of placeholder n(i+1).
/// Leaves carrying pi and non-integer exponents switch that subtree to
/// binary64. Throws Errc::DivisionByZero, Errc::ZeroToNegativePower,
/// Errc::NumericOverflow, Errc::NonFiniteResult, Errc::UnboundPlaceholder.
EvalValue evaluate(const EquationTree& tree, std::span<const ExactValue> bindings = {});

struct AnswerCheck {
  bool matches = false;
  std::optional<EvalValue> value;
  std::string reason;  // empty when matches
};

AnswerCheck check_answer(const EquationTree& tree, std::span<const ExactValue> bindings,
                         const ExactValue& answer, double tolerance = 1e-4);

// ---------------------------------------------------------------------------
// Structure

struct LeafDepth {
  NodeId leaf;
  int depth;
};

std::vector<LeafDepth> leaf_depths(const EquationTree& tree);

NodeId lowest_common_ancestor(const EquationTree& tree, NodeId a, NodeId b);

/// The unique leaf holding placeholder `p`. Throws Errc::AmbiguousLeaf when
/// it occurs more than once, Errc::LeafNotFound when absent.
NodeId find_leaf(const EquationTree& tree, Placeholder p);

/// Operator at the lowest common ancestor of two distinct leaves.
Op pair_operator(const EquationTree& tree, NodeId a, NodeId b);
Op pair_operator(const EquationTree& tree, Placeholder a, Placeholder b);

/// depth(a) - depth(b).
int tree_distance(const EquationTree& tree, NodeId a, NodeId b);
int tree_distance(const EquationTree& tree, Placeholder a, Placeholder b);

inline std::size_t operator_count(const EquationTree& tree) { return tree.operator_count(); }

}  // namespace mwp
