#include "mwp/analysis.hpp"
#include "mwp/error.hpp"
#include "mwp/mapping.hpp"

#include <doctest.h>

using namespace mwp;

namespace {

MappedProblem map_text(std::string_view text, int k = kDefaultMaxQuantities) {
  const auto tokens = tokenize_text(text);
  return map_numbers(tokens, recognize_numbers(tokens), k);
}

const char* kTeamText =
    "Team A and team B are working on a project together. Team A finished (4/15) of the project, and team B "
    "finished (2/15) more than Team A . How many percentage did the two teams finish in total?";

}  // namespace

TEST_CASE("map_numbers") {
  SUBCASE("fractions become placeholders in order") {
    const MappedProblem m = map_text(kTeamText);
    REQUIRE(m.table.size() == 2);
    CHECK(m.table[0].placeholder == "n1");
    CHECK(m.table[0].quantity.value == ExactValue::fraction(4, 15));
    CHECK(m.table[1].placeholder == "n2");
    CHECK(m.table[1].quantity.value == ExactValue::fraction(2, 15));
    CHECK(std::count(m.tokens.begin(), m.tokens.end(), "n1") == 1);
    CHECK(std::count(m.tokens.begin(), m.tokens.end(), "n2") == 1);
  }
  SUBCASE("no numbers leaves tokens unchanged") {
    const auto tokens = tokenize_text("How many apples?");
    const MappedProblem m = map_numbers(tokens, recognize_numbers(tokens));
    CHECK(m.table.empty());
    CHECK(m.tokens == tokens);
  }
  SUBCASE("repeated values get distinct placeholders") {
    const MappedProblem m = map_text("3 cats and 3 dogs");
    REQUIRE(m.table.size() == 2);
    CHECK(m.tokens == std::vector<std::string>{"n1", "cats", "and", "n2", "dogs"});
  }
  SUBCASE("quantity limit") {
    std::string text;
    for (int i = 1; i <= 16; ++i) text += std::to_string(i) + " ";
    CHECK_THROWS_AS(map_text(text, 15), Error);
    CHECK(map_text(text, 16).table.size() == 16);
  }
}

TEST_CASE("substituting values back reproduces the quantities") {
  const MappedProblem m = map_text("He reads 30% on day 1, 15 pages on day 2 and 1(1/2) hours; ratio 2:3.");
  std::vector<std::string> restored = m.tokens;
  for (const auto& e : m.table) std::replace(restored.begin(), restored.end(), e.placeholder, e.quantity.surface);
  const auto again = recognize_numbers(restored);
  REQUIRE(again.size() == m.table.size());
  for (std::size_t i = 0; i < again.size(); ++i) CHECK(again[i].value == m.table[i].quantity.value);
}

TEST_CASE("resolve_equation_numbers") {
  const MappedProblem m = map_text(kTeamText);
  const Vocab vocab = Vocab::standard();

  SUBCASE("first match wins and repeats share a placeholder") {
    const EquationTree r = resolve_equation_numbers(parse_equation("(4/15)+(2/15)+(4/15)"), m, vocab);
    CHECK(to_string(r, Notation::Infix) == "((n1+n2)+n1)");
  }
  SUBCASE("constant 1 is allowed") {
    const EquationTree r = resolve_equation_numbers(parse_equation("1-(4/15)"), m, vocab);
    CHECK(r.node(r.leaves()[0]).leaf.kind == LeafKind::Constant);
    CHECK(to_string(r, Notation::Infix) == "(1-n1)");
  }
  SUBCASE("unknown literal is an external constant") {
    try {
      resolve_equation_numbers(parse_equation("4*(2/15)"), m, vocab);
      FAIL("expected ExternalConstant");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::ExternalConstant);
    }
  }
  SUBCASE("fraction literal falls back to a division of quantities") {
    const MappedProblem q = map_text("There are 4 red and 9 blue balls.");
    const EquationTree r = resolve_equation_numbers(parse_equation("(4/9)"), q, vocab);
    CHECK(to_string(r, Notation::Infix) == "(n1/n2)");
  }
  SUBCASE("division of literals falls back to one fraction quantity") {
    const MappedProblem q = map_text("A cake is cut into pieces and (3/4) of it is eaten.");
    const EquationTree r = resolve_equation_numbers(parse_equation("1-3/4"), q, vocab);
    CHECK(to_string(r, Notation::Infix) == "(1-n1)");
  }
  SUBCASE("pi is a constant") {
    const MappedProblem q = map_text("A circle has radius 3.");
    const EquationTree r = resolve_equation_numbers(parse_equation("pi*3*3"), q, vocab);
    CHECK_THROWS_AS(resolve_equation_numbers(parse_equation("pi*3*3"), q, Vocab{.constants = {ExactValue(1)}}),
                    Error);
    for (NodeId id : r.leaves()) CHECK(r.node(id).leaf.kind != LeafKind::Literal);
  }
}

TEST_CASE("resolution is deterministic and idempotent, leaving no literals") {
  const MappedProblem m = map_text("There are 20 questions. 5 points each, 1 point off, 70 points in total.");
  const Vocab vocab = Vocab::standard();
  const EquationTree once = resolve_equation_numbers(parse_equation("20-(20*5-70)/(5+1)"), m, vocab);
  CHECK(once == resolve_equation_numbers(parse_equation("20-(20*5-70)/(5+1)"), m, vocab));
  CHECK(resolve_equation_numbers(once, m, vocab) == once);
  for (NodeId id : once.leaves()) {
    const Leaf& leaf = once.node(id).leaf;
    CHECK(leaf.kind == LeafKind::Placeholder);
    CHECK(leaf.placeholder >= 1);
    CHECK(leaf.placeholder <= 4);
  }
  CHECK(evaluate(once, m.bindings()).exact_value() == ExactValue(15));
}

TEST_CASE("mapping json") {
  const auto j = to_json(map_text("Add 3 and (1/2)."));
  CHECK(j["k"] == 15);
  REQUIRE(j["map"].size() == 2);
  CHECK(j["map"][1]["ph"] == "n2");
  CHECK(j["map"][1]["surface"] == "(1/2)");
  CHECK(j["map"][1]["value"] == "1/2");
}

TEST_CASE("analyze collects each stage") {
  const MwpRecord r = make_record("r", "Team A builds (4/9), and team B builds (1/9) more than team A.",
                                  "x=(4/9)+(1/9)", "5/9");
  const Analysis a = analyze(r);
  CHECK(a.quantities.size() == 2);
  REQUIRE(a.mapped);
  REQUIRE(a.tree);
  REQUIRE(a.resolved);
  CHECK(to_string(*a.resolved, Notation::Infix) == "(n1+n2)");
  CHECK(a.answer_consistent());
  CHECK(a.equation_token_count == 3);
}
