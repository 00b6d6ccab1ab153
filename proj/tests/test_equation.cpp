#include "mwp/equation.hpp"
#include "mwp/error.hpp"
#include "support/gmp_oracle.hpp"
#include "support/random_tree.hpp"

#include <doctest.h>

using namespace mwp;
using mwp::testing::RandomTrees;

namespace {

Errc error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::InvalidArgument;
}

ExactValue eval_exact(std::string_view s) {
  const EvalValue v = evaluate(parse_equation(s));
  REQUIRE(v.exact());
  return v.exact_value();
}

std::vector<std::string> texts(const std::vector<EqToken>& toks) {
  std::vector<std::string> out;
  for (const auto& t : toks) out.push_back(t.text);
  return out;
}

// Leaves of ÷(−(80,×(25,2)),−(4,2)) in pre-order: 80, 25, 2, 4, 2.
struct SampleTree {
  EquationTree tree = parse_equation("(80-25*2)/(4-2)");
  std::vector<NodeId> leaves = tree.leaves();
};

}  // namespace

TEST_CASE("tokenize_equation") {
  CHECK(texts(tokenize_equation("20-(20*5-70)/(5+1)")) ==
        std::vector<std::string>{"20", "-", "(", "20", "*", "5", "-", "70", ")", "/", "(", "5", "+", "1", ")"});
  const auto toks = tokenize_equation("15/(1-((3)/(2+3))-30%)");
  const auto pct = std::find_if(toks.begin(), toks.end(), [](const EqToken& t) { return t.text == "30%"; });
  REQUIRE(pct != toks.end());
  CHECK(pct->kind == EqTokenKind::Number);
  CHECK(pct->number.value == ExactValue::fraction(3, 10));
  CHECK(tokenize_equation("").empty());

  const auto frac = tokenize_equation("(4/9)+(1/9)");
  REQUIRE(frac.size() == 3);
  CHECK(frac[0].number.value == ExactValue::fraction(4, 9));

  const auto spelled = tokenize_equation("2**3×4÷n2−π");
  REQUIRE(spelled.size() == 9);
  CHECK(spelled[1].op == Op::Pow);
  CHECK(spelled[3].op == Op::Mul);
  CHECK(spelled[5].op == Op::Div);
  CHECK(spelled[6].kind == EqTokenKind::Placeholder);
  CHECK(spelled[6].placeholder == 2);
  CHECK(spelled[7].op == Op::Sub);
  CHECK(spelled[8].kind == EqTokenKind::Pi);

  CHECK(error_of([] { tokenize_equation("3 $ 4"); }) == Errc::UnknownCharacter);
}

TEST_CASE("parse_equation structure") {
  const EquationTree t = parse_equation("(80-25*2)/(4-2)");
  const EquationTree expected = EquationTree::combine(
      Op::Div,
      EquationTree::combine(Op::Sub, EquationTree::single(Leaf::literal(80)),
                            EquationTree::combine(Op::Mul, EquationTree::single(Leaf::literal(25)),
                                                  EquationTree::single(Leaf::literal(2)))),
      EquationTree::combine(Op::Sub, EquationTree::single(Leaf::literal(4)),
                            EquationTree::single(Leaf::literal(2))));
  CHECK(t == expected);
  CHECK(to_string(t, Notation::Prefix) == "/ - 80 * 25 2 - 4 2");

  CHECK(to_string(parse_equation("2^3^2"), Notation::Prefix) == "^ 2 ^ 3 2");
  CHECK(to_string(parse_equation("8-3-2"), Notation::Prefix) == "- - 8 3 2");
  CHECK(to_string(parse_equation("-3+4"), Notation::Prefix) == "+ - 0 3 4");
  CHECK(to_string(parse_equation("2*-3"), Notation::Prefix) == "* 2 - 0 3");
  CHECK(to_string(parse_equation("-2^2"), Notation::Prefix) == "- 0 ^ 2 2");
  CHECK(evaluate(parse_equation("-2^2")).exact_value() == ExactValue(-4));
}

TEST_CASE("parse_equation errors") {
  CHECK(error_of([] { parse_equation("(1+2"); }) == Errc::UnbalancedParentheses);
  CHECK(error_of([] { parse_equation("1+2)"); }) == Errc::UnbalancedParentheses);
  CHECK(error_of([] { parse_equation("1+"); }) == Errc::SyntaxError);
  CHECK(error_of([] { parse_equation("1 2"); }) == Errc::SyntaxError);
  CHECK(error_of([] { parse_equation("()"); }) == Errc::SyntaxError);
  CHECK(error_of([] { parse_equation(""); }) == Errc::SyntaxError);
}

TEST_CASE("serialize and parse_prefix") {
  const SampleTree s;
  CHECK(serialize(s.tree, Notation::Prefix) ==
        std::vector<std::string>{"/", "-", "80", "*", "25", "2", "-", "4", "2"});
  CHECK(serialize(EquationTree::single(Leaf::literal(15)), Notation::Prefix) == std::vector<std::string>{"15"});
  CHECK(to_string(parse_equation("(4/9)+(1/9)"), Notation::Infix) == "((4/9)+(1/9))");
  CHECK(error_of([] { parse_prefix("+ 1"); }) == Errc::PrefixUnderflow);
  CHECK(error_of([] { parse_prefix("+ 1 2 3"); }) == Errc::SyntaxError);
  CHECK(error_of([] { parse_prefix("+ 1 apple"); }) == Errc::SyntaxError);
  CHECK(parse_prefix("* n1 pi") ==
        EquationTree::combine(Op::Mul, EquationTree::single(Leaf::placeholder_leaf(1)),
                              EquationTree::single(Leaf::literal(ExactValue::pi(), NumberKind::Pi))));
}

TEST_CASE("round trip on random trees") {
  RandomTrees gen(2024);
  for (int i = 0; i < 2000; ++i) {
    const EquationTree t = gen.next();
    CAPTURE(to_string(t, Notation::Infix));
    CHECK(parse_equation(to_string(t, Notation::Infix)) == t);
    CHECK(parse_prefix(serialize(t, Notation::Prefix)) == t);
  }
}

TEST_CASE("evaluate worked expressions") {
  CHECK(eval_exact("20-(20*5-70)/(5+1)") == ExactValue(15));
  CHECK(eval_exact("15/(1-((3)/(2+3))-30%)") == ExactValue(150));
  CHECK(eval_exact("(50*72%-25*(3/5))/(50-25)") == ExactValue::fraction(21, 25));
  CHECK(eval_exact("(4/9)+(1/9)") == ExactValue::fraction(5, 9));
  CHECK(eval_exact("(80-25)*2/(4-2)") == ExactValue(55));
  CHECK(eval_exact("(80-25*2)/(4-2)") == ExactValue(15));
  CHECK(eval_exact("2^-2") == ExactValue::fraction(1, 4));
  CHECK(eval_exact("(2/3)^3") == ExactValue::fraction(8, 27));
  CHECK(eval_exact("1(1/2)*2") == ExactValue(3));
}

TEST_CASE("evaluate with bindings, pi and errors") {
  const std::vector<ExactValue> b{ExactValue(4), ExactValue::fraction(1, 2)};
  CHECK(evaluate(parse_equation("n1*n2+1"), b).exact_value() == ExactValue(3));
  CHECK(error_of([&] { evaluate(parse_equation("n3+1"), b); }) == Errc::UnboundPlaceholder);

  const EvalValue circle = evaluate(parse_equation("pi*2^2"));
  CHECK_FALSE(circle.exact());
  CHECK(circle.to_double() == doctest::Approx(12.566370614359172));
  const EvalValue root = evaluate(parse_equation("4^(1/2)"));
  CHECK_FALSE(root.exact());
  CHECK(root.to_double() == 2.0);

  CHECK(error_of([] { evaluate(parse_equation("1/(2-2)")); }) == Errc::DivisionByZero);
  CHECK(error_of([] { evaluate(parse_equation("0^-1")); }) == Errc::ZeroToNegativePower);
  CHECK(error_of([] { evaluate(parse_equation("3^100000")); }) == Errc::NumericOverflow);
  CHECK(error_of([] { evaluate(parse_equation("pi^100000")); }) == Errc::NonFiniteResult);
  CHECK(evaluate(parse_equation("1^1000000000")).exact_value() == ExactValue(1));
}

TEST_CASE("evaluate matches the GMP interpreter") {
  RandomTrees gen(77, {.max_depth = 6, .allow_pi = false, .allow_placeholders = true,
                       .small_integer_exponents = true});
  const std::vector<ExactValue> bindings{3, ExactValue::fraction(1, 2), 0, 7, ExactValue::fraction(-5, 3)};
  std::vector<mpq_class> q;
  for (const auto& v : bindings) q.push_back(mwp::testing::to_mpq(v));
  int errors = 0;
  for (int i = 0; i < 2000; ++i) {
    const EquationTree t = gen.next();
    const auto expected = mwp::testing::oracle(t, q);
    CAPTURE(to_string(t, Notation::Infix));
    try {
      const EvalValue v = evaluate(t, bindings);
      REQUIRE(expected.value);
      REQUIRE(v.exact());
      CHECK(mwp::testing::to_mpq(v.exact_value()) == *expected.value);
    } catch (const Error& e) {
      ++errors;
      REQUIRE(expected.error);
      CHECK(e.code() == *expected.error);
    }
  }
  CHECK(errors > 0);
}

TEST_CASE("check_answer") {
  CHECK(check_answer(parse_equation("(4/9)+(1/9)"), {}, ExactValue::fraction(5, 9)).matches);
  const AnswerCheck mismatch = check_answer(parse_equation("(80-25)*2/(4-2)"), {}, ExactValue(15));
  CHECK_FALSE(mismatch.matches);
  CHECK(mismatch.value->exact_value() == ExactValue(55));
  CHECK(check_answer(parse_equation("pi*2"), {}, parse_answer("6.28319").value).matches);
  CHECK_FALSE(check_answer(parse_equation("pi*2"), {}, parse_answer("6.28").value).matches);
  CHECK(check_answer(parse_equation("pi*2"), {}, ExactValue(Rational(2), true)).matches);
  CHECK_FALSE(check_answer(parse_equation("1/0"), {}, ExactValue(1)).matches);
}

TEST_CASE("leaf depths, pair operator and distance") {
  const SampleTree s;
  const auto depths = leaf_depths(s.tree);
  REQUIRE(depths.size() == 5);
  const int expected[] = {2, 3, 3, 2, 2};
  for (std::size_t i = 0; i < 5; ++i) CHECK(depths[i].depth == expected[i]);
  CHECK(leaf_depths(EquationTree::single(Leaf::literal(15)))[0].depth == 0);
  const auto plus = leaf_depths(parse_equation("n1+n2"));
  CHECK(plus[0].depth == 1);
  CHECK(plus[1].depth == 1);

  const auto& L = s.leaves;  // 80, 25, 2, 4, 2
  CHECK(pair_operator(s.tree, L[3], L[4]) == Op::Sub);
  CHECK(pair_operator(s.tree, L[0], L[1]) == Op::Sub);
  CHECK(pair_operator(s.tree, L[0], L[3]) == Op::Div);
  CHECK(pair_operator(s.tree, L[1], L[2]) == Op::Mul);
  CHECK(tree_distance(s.tree, L[0], L[1]) == -1);
  CHECK(tree_distance(s.tree, L[1], L[3]) == 1);
  CHECK(tree_distance(s.tree, L[2], L[2]) == 0);
  CHECK(error_of([&] { pair_operator(s.tree, L[0], L[0]); }) == Errc::InvalidArgument);
}

TEST_CASE("placeholder lookups") {
  const EquationTree t = parse_equation("n1-(n2*n3)+n1");
  CHECK(pair_operator(t, Placeholder{2}, Placeholder{3}) == Op::Mul);
  CHECK(tree_distance(t, Placeholder{2}, Placeholder{3}) == 0);
  CHECK(error_of([&] { find_leaf(t, Placeholder{1}); }) == Errc::AmbiguousLeaf);
  CHECK(error_of([&] { find_leaf(t, Placeholder{4}); }) == Errc::LeafNotFound);
}

TEST_CASE("operator_count") {
  CHECK(operator_count(parse_equation("20-(20*5-70)/(5+1)")) == 5);
  CHECK(operator_count(EquationTree::single(Leaf::literal(3))) == 0);
  CHECK(operator_count(parse_equation("(4/9)+(1/9)")) == 1);
}

TEST_CASE("structural laws on random trees") {
  RandomTrees gen(99);
  for (int n = 0; n < 500; ++n) {
    const EquationTree t = gen.next();
    CHECK(t.operator_count() + 1 == t.leaf_count());
    for (NodeId id = 0; id < t.size(); ++id) {
      const Node& node = t.node(id);
      if (!node.is_operator) continue;
      CHECK(t.depth(node.left) == node.depth + 1);
      CHECK(t.depth(node.right) == node.depth + 1);
    }
    const auto leaves = t.leaves();
    for (std::size_t i = 0; i + 1 < leaves.size(); ++i) {
      const NodeId a = leaves[i];
      const NodeId b = leaves[i + 1];
      CHECK(pair_operator(t, a, b) == pair_operator(t, b, a));
      CHECK(tree_distance(t, a, b) == -tree_distance(t, b, a));
    }
  }
}

TEST_CASE("subtree copies keep pre-order") {
  const SampleTree s;
  const EquationTree left = s.tree.subtree(s.tree.node(0).left);
  CHECK(left == parse_equation("80-25*2"));
  CHECK(left.depth(0) == 0);
}
