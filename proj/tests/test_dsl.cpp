#include "doctest.h"
#include "pcook/dsl.hpp"
#include "support/corpus.hpp"
#include "support/random_program.hpp"

using namespace pcook;

namespace {

const Behavior& behavior_at(const Block& b, std::size_t i) { return std::get<Behavior>(b.at(i).node); }

bool has_diagnostic(const Program& p, const std::string& needle) {
  for (const auto& d : validate(p)) {
    if (d.message.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("if with a perception condition") {
  const Program p = parse_program("if IsOnFire():\n    PutOutFire()");
  REQUIRE(p.body.size() == 1);
  const auto& s = std::get<IfStmt>(p.body[0].node);
  CHECK(s.cond.query == is_on_fire());
  REQUIRE(s.then_block.size() == 1);
  CHECK(behavior_at(s.then_block, 0) == put_out_fire());
  CHECK_FALSE(s.else_block.has_value());
}

TEST_CASE("repeat without a count") {
  const Program p = parse_program("repeat:\n    Pick(FreshTomato)");
  const auto& s = std::get<RepeatStmt>(p.body.at(0).node);
  CHECK_FALSE(s.count.has_value());
  CHECK(behavior_at(s.body, 0) == pick(Item::FreshTomato));
}

TEST_CASE("repeat with a count") {
  const Program p = parse_program("repeat(3):\n    Pick(FreshOnion)\n");
  CHECK(std::get<RepeatStmt>(p.body.at(0).node).count == 3);
}

TEST_CASE("chop of a plate is rejected") {
  CHECK_THROWS_AS(parse_program("Chop(Plate)"), ValidationError);
  const Program p = parse_program_unchecked("Chop(Plate)");
  CHECK(has_diagnostic(p, "fresh"));
}

TEST_CASE("def main header is optional") {
  const Program a = parse_program("def main():\n    Pick(FreshOnion)\n    Chop(FreshOnion)\n");
  const Program b = parse_program("Pick(FreshOnion)\nChop(FreshOnion)\n");
  CHECK(a == b);
}

TEST_CASE("if else") {
  const Program p = parse_program(
      "if is_there(ChoppedOnion):\n"
      "    Merge(ChoppedOnion,Plate)\n"
      "else:\n"
      "    Pick(FreshOnion)\n"
      "Serve(ChoppedOnion+Plate)\n");
  REQUIRE(p.body.size() == 2);
  const auto& s = std::get<IfStmt>(p.body[0].node);
  CHECK(s.cond.query == is_there(Item::ChoppedOnion));
  REQUIRE(s.else_block.has_value());
  CHECK(behavior_at(*s.else_block, 0) == pick(Item::FreshOnion));
  CHECK(behavior_at(p.body, 1) == serve(Item::ChoppedOnionPlate));
}

TEST_CASE("bracket and paren query forms agree") {
  const Program a = parse_program("if is_ordered[ChoppedTomato]:\n    Pick(FreshTomato)");
  const Program b = parse_program("if is_ordered(ChoppedTomato):\n    Pick(FreshTomato)");
  const Program c = parse_program("if (IsOrdered(ChoppedTomato)):\n    Pick(FreshTomato)");
  CHECK(a == b);
  CHECK(b == c);
}

TEST_CASE("bare ingredient in a query normalizes to the chopped item") {
  const Program p = parse_program("if is_ordered(Onion):\n    Pick(FreshOnion)");
  CHECK(std::get<IfStmt>(p.body[0].node).cond.query == is_ordered(Item::ChoppedOnion));
}

TEST_CASE("tautology spellings") {
  for (const char* text : {"while True:\n    PutOutFire()", "while (True):\n    PutOutFire()",
                           "while tautology:\n    PutOutFire()"}) {
    const Program p = parse_program(text);
    CHECK(std::get<WhileStmt>(p.body[0].node).cond.is_tautology());
  }
}

TEST_CASE("parallel with numbered blocks") {
  const Program p = parse_program(
      "parallel:\n"
      "    1:\n"
      "        Pick(FreshOnion)\n"
      "    2:\n"
      "        Pick(FreshTomato)\n"
      "        Chop(FreshTomato)\n");
  const auto& s = std::get<ParallelStmt>(p.body.at(0).node);
  REQUIRE(s.blocks.size() == 2);
  CHECK(s.blocks[0].size() == 1);
  CHECK(s.blocks[1].size() == 2);
}

TEST_CASE("inline statements after block labels") {
  const Program a = parse_program(
      "parallel:\n"
      "    1. Pick(FreshOnion)\n"
      "    2. Pick(FreshTomato)\n");
  const Program b = parse_program(
      "parallel:\n"
      "    1:\n"
      "        Pick(FreshOnion)\n"
      "    2:\n"
      "        Pick(FreshTomato)\n");
  CHECK(a == b);
}

TEST_CASE("comments and blank lines are ignored") {
  const Program p = parse_program("# header\n\nPick(FreshOnion)  # take one\n\n");
  CHECK(p.body.size() == 1);
}

TEST_CASE("merge is order-insensitive as a subtask") {
  CHECK(same_subtask(merge(Item::Plate, Item::ChoppedOnion), merge(Item::ChoppedOnion, Item::Plate)));
  CHECK_FALSE(same_subtask(merge(Item::ChoppedTomato, Item::Plate), merge(Item::ChoppedOnion, Item::Plate)));
}

TEST_CASE("error kinds") {
  SUBCASE("syntax") {
    CHECK_THROWS_AS(parse_program("Pick(FreshOnion"), SyntaxError);
    CHECK_THROWS_AS(parse_program("if IsOnFire()\n    PutOutFire()"), SyntaxError);
    CHECK_THROWS_AS(parse_program("Pick(FreshOnion)\n        Chop(FreshOnion)"), SyntaxError);
    CHECK_THROWS_AS(parse_program("parallel:\n    1:\n        Pick(FreshOnion)\n    3:\n        Pick(FreshTomato)"),
                    SyntaxError);
    CHECK_THROWS_AS(parse_program(""), SyntaxError);
  }
  SUBCASE("arity") {
    CHECK_THROWS_AS(parse_program("Pick()"), ArityError);
    CHECK_THROWS_AS(parse_program("Merge(ChoppedOnion)"), ArityError);
    CHECK_THROWS_AS(parse_program("PutOutFire(Plate)"), ArityError);
    CHECK_THROWS_AS(parse_program("if IsOnFire(Plate):\n    PutOutFire()"), ArityError);
  }
  SUBCASE("unknown identifiers") {
    CHECK_THROWS_AS(parse_program("Fry(FreshOnion)"), UnknownIdentifier);
    CHECK_THROWS_AS(parse_program("Pick(FreshCarrot)"), UnknownIdentifier);
    CHECK_THROWS_AS(parse_program("if is_hot(Plate):\n    Pick(Plate)"), UnknownIdentifier);
    CHECK_THROWS_AS(parse_program("Pick(DirtyPlate)"), UnknownIdentifier);
  }
}

TEST_CASE("syntax errors carry a location") {
  try {
    parse_program("Pick(FreshOnion)\nChop(FreshOnion\n");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() >= 1);
  }
}

TEST_CASE("validation diagnostics") {
  CHECK(validate(parse_program("Merge(ChoppedOnion, Plate)")).empty());
  CHECK(has_diagnostic(parse_program_unchecked("Merge(Plate, Plate)"), "compose"));
  CHECK(has_diagnostic(parse_program_unchecked("Merge(ChoppedOnion+Plate, ChoppedOnion)"), "compose"));
  CHECK(has_diagnostic(parse_program_unchecked("Serve(Plate)"), "plated"));

  Program one_block;
  ParallelStmt par;
  par.blocks.push_back(Block{Statement{pick(Item::FreshOnion)}});
  one_block.body.push_back(Statement{std::move(par)});
  CHECK(has_diagnostic(one_block, "two blocks"));

  Program zero_count;
  RepeatStmt rep;
  rep.body.push_back(Statement{pick(Item::FreshOnion)});
  rep.count = 0;
  zero_count.body.push_back(Statement{std::move(rep)});
  CHECK(has_diagnostic(zero_count, "at least 1"));

  CHECK(has_diagnostic(Program{}, "empty"));

  Program nested;
  WhileStmt w;
  w.cond = Condition{is_on_fire()};
  nested.body.push_back(Statement{std::move(w)});
  const auto diags = validate(nested);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].where == "body[0].while");
}

TEST_CASE("diagnostic paths locate the statement") {
  const Program p = parse_program_unchecked(
      "parallel:\n"
      "    1:\n"
      "        Pick(FreshOnion)\n"
      "    2:\n"
      "        Pick(FreshTomato)\n"
      "        Chop(Plate)\n");
  const auto diags = validate(p);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].where == "body[0].parallel[1][1]");
}

TEST_CASE("corpus programs parse cleanly and round-trip") {
  for (const auto& name : std::filesystem::directory_iterator(std::string(PCOOK_SOURCE_DIR) + "/programs")) {
    CAPTURE(name.path().string());
    const Program p = parse_program(testing::read_file(name.path().string()));
    CHECK(validate(p).empty());
    const std::string text = format_program(p);
    CHECK(parse_program(text) == p);
    CHECK(format_program(parse_program(text)) == text);
  }
}

TEST_CASE("hard program normalizations") {
  const Program p = parse_program(testing::program_text("hard_dishes_with_fire.prog"));
  const auto& par = std::get<ParallelStmt>(p.body.at(0).node);
  REQUIRE(par.blocks.size() == 3);
  const auto& first = std::get<IfStmt>(par.blocks[0].at(0).node);
  CHECK(first.cond.query == is_ordered(Item::ChoppedOnion));
  CHECK(behavior_at(first.then_block, 1) == serve(Item::ChoppedOnionPlate));
  const auto& loop = std::get<WhileStmt>(par.blocks[2].at(0).node);
  CHECK(loop.cond.is_tautology());
  const auto& guard = std::get<IfStmt>(loop.body.at(0).node);
  CHECK(behavior_at(guard.then_block, 0) == put_out_fire());
}

TEST_CASE("canonical text is a fixed point") {
  const std::string text =
      "while IsOnFire():\n"
      "    parallel:\n"
      "        1:\n"
      "            PutOutFire()\n"
      "        2:\n"
      "            repeat(2):\n"
      "                Pick(FreshOnion)\n"
      "if is_there(Plate):\n"
      "    WashDirtyPlate()\n"
      "else:\n"
      "    Pick(Plate)\n";
  CHECK(format_program(parse_program(text)) == text);
}

TEST_CASE("single behavior formats to one line") {
  CHECK(format_program(parse_program("Pick(FreshOnion)")) == "Pick(FreshOnion)\n");
}

TEST_CASE("random programs round-trip") {
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    testing::RandomProgram gen(seed);
    const Program p = gen.program(4);
    REQUIRE(validate(p).empty());
    const std::string text = format_program(p);
    CAPTURE(text);
    REQUIRE(parse_program(text) == p);
  }
}
