#include <random>

#include "doctest.h"
#include "support/golden_traces.hpp"
#include "support/random_program.hpp"

using namespace pcook;
using namespace pcook::testing;

namespace {

int leaf_blocks(const Statement& s, int m) {
  if (const auto* p = std::get_if<ParallelStmt>(&s.node)) {
    int n = 0;
    for (const auto& b : p->blocks) n += leaf_blocks(b.front(), m);
    return n;
  }
  if (const auto* r = std::get_if<RepeatStmt>(&s.node)) return r->count.value_or(m) * leaf_blocks(r->body.front(), m);
  return 1;
}

// Drives a program with random answers and completions. Every query answers
// true at most `budget` times before it is forced false, so loops end.
struct RandomDriver {
  std::mt19937_64 rng;
  std::map<Query, int> trues;
  int budget = 2;

  std::string next(const ExecutorState& s) {
    const auto pending = pending_perceptions(s);
    const auto handles = possible_subroutines(s);
    const std::size_t total = pending.size() + handles.size();
    std::size_t pick = std::uniform_int_distribution<std::size_t>(0, total - 1)(rng);
    if (pick < pending.size()) {
      const Query q = *std::next(pending.begin(), static_cast<std::ptrdiff_t>(pick));
      bool answer = (rng() & 1) != 0 && trues[q] < budget;
      if (answer) trues[q]++;
      return to_string(q) + (answer ? "=true" : "=false");
    }
    return to_string(handles[pick - pending.size()].behavior);
  }
};

}  // namespace

TEST_CASE("golden pointer traces") {
  for (const auto& t : golden_traces()) {
    CAPTURE(t.name);
    const auto mismatch = check_golden(t);
    CHECK_MESSAGE(!mismatch, mismatch.value_or(""));
  }
}

TEST_CASE("golden trace count covers the corpus and edge programs") {
  std::set<std::string> files;
  int edge = 0;
  for (const auto& t : golden_traces()) {
    if (t.program[0] == '@') {
      files.insert(t.program.substr(1));
    } else {
      ++edge;
    }
  }
  for (const auto& name : reference_programs()) CHECK(files.count(name) == 1);
  CHECK(edge >= 10);
}

TEST_CASE("init examples") {
  CHECK(describe(init(parse_program("Pick(FreshOnion)"), 2)) == "running 0:Pick(FreshOnion)");
  const auto s = init(parse_program(program_text("medium_parallel_pick_wash.prog")), 2);
  CHECK(s.pointers.size() == 3);
  CHECK(pending_perceptions(s).empty());
  const auto r = init(parse_program("repeat:\n    Pick(FreshTomato)"), 3);
  CHECK(r.pointers.size() == 3);
  CHECK(status(r) == ExecStatus::Running);
}

TEST_CASE("possible subroutines carry multiplicity") {
  const auto s = init(parse_program("repeat:\n    Pick(FreshTomato)"), 2);
  const auto handles = possible_subroutines(s);
  REQUIRE(handles.size() == 2);
  CHECK(handles[0].behavior == handles[1].behavior);
  CHECK(handles[0].pointer != handles[1].pointer);
  const auto done = notify_completion(notify_completion(s, pick(Item::FreshTomato)), pick(Item::FreshTomato));
  CHECK(status(done) == ExecStatus::Completed);
  CHECK(possible_subroutines(done).empty());
  CHECK(pending_perceptions(done).empty());
}

TEST_CASE("resolving a query nobody waits on throws") {
  const auto s = init(parse_program("if IsOnFire():\n    PutOutFire()"), 2);
  CHECK_THROWS_AS(resolve_perception(s, is_there(Item::Plate), true), UnknownQuery);
  const auto t = resolve_perception(s, is_on_fire(), true);
  CHECK_THROWS_AS(resolve_perception(t, is_on_fire(), true), UnknownQuery);
}

TEST_CASE("transitions leave their input untouched") {
  const auto s = init(parse_program(program_text("hard_two_dishes.prog")), 2);
  const auto copy = s;
  const auto t = notify_completion(s, pick(Item::FreshOnion));
  CHECK(s == copy);
  CHECK_FALSE(t == s);
}

TEST_CASE("event records") {
  ExecEvents events;
  auto s = init(parse_program(program_text("medium_parallel_pick_wash.prog")), 2, &events);
  REQUIRE(events.size() == 3);
  CHECK(events[0].kind == ExecEventKind::Spawn);
  CHECK(events[1].kind == ExecEventKind::Remove);
  CHECK(events[2].kind == ExecEventKind::Spawn);
  CHECK(events[2].pointers == std::vector<PointerId>{1, 2, 3});
  events.clear();
  s = notify_completion(s, wash_dirty_plate(), &events);
  REQUIRE(events.size() == 2);
  CHECK(events[0].kind == ExecEventKind::Completion);
  CHECK(events[0].pointers == std::vector<PointerId>{3});
  CHECK(events[1].kind == ExecEventKind::Remove);
  events.clear();
  s = notify_completion(s, chop(Item::FreshOnion), &events);
  REQUIRE(events.size() == 1);
  CHECK(events[0].kind == ExecEventKind::Violate);
}

TEST_CASE("pointer paths") {
  const auto s = init(parse_program(program_text("hard_dishes_with_fire.prog")), 2);
  REQUIRE(s.pointers.size() == 3);
  CHECK(s.pointers[0].path() == "body[0].parallel[0][0]");
  CHECK(s.pointers[2].path() == "body[0].parallel[2][0].while[0]");
}

TEST_CASE("pointer count after init equals leaf blocks") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    RandomProgram gen(seed);
    const Program p = gen.program(3);
    const int m = 1 + static_cast<int>(seed % 3);
    const auto s = init(p, m);
    const Statement& head = p.body.front();
    const bool splits = std::holds_alternative<ParallelStmt>(head.node) || std::holds_alternative<RepeatStmt>(head.node);
    if (!splits) {
      CHECK(s.pointers.size() == 1);
    } else {
      CHECK(s.pointers.size() == static_cast<std::size_t>(leaf_blocks(head, m)));
    }
  }
}

TEST_CASE("random drives terminate, touch only the advanced pointer, and replay exactly") {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    RandomProgram gen(seed);
    const auto program = std::make_shared<const Program>(gen.program(3));
    const int m = 1 + static_cast<int>(seed % 3);
    RandomDriver driver{std::mt19937_64(seed * 7919 + 1)};

    ExecutorState s = init(program, m);
    std::vector<std::string> steps;
    std::vector<std::string> seen{describe(s)};
    int n = 0;
    while (status(s) == ExecStatus::Running) {
      REQUIRE(++n < 20000);
      REQUIRE_FALSE(s.pointers.empty());
      const std::string step = driver.next(s);
      steps.push_back(step);
      ExecEvents events;
      const ExecutorState t = apply_step(s, step, &events);
      if (step.find('=') == std::string::npos) {
        REQUIRE(status(t) != ExecStatus::Violated);
        REQUIRE(events.front().kind == ExecEventKind::Completion);
        const PointerId moved = events.front().pointers.at(0);
        for (const auto& p : s.pointers) {
          if (p.id == moved) continue;
          const auto it = std::find_if(t.pointers.begin(), t.pointers.end(), [&](const Pointer& q) { return q.id == p.id; });
          REQUIRE(it != t.pointers.end());
          CHECK(*it == p);
        }
      }
      s = t;
      seen.push_back(describe(s));
    }
    CHECK(status(s) == ExecStatus::Completed);
    CHECK(s.pointers.empty());

    ExecutorState r = init(program, m);
    CHECK(describe(r) == seen[0]);
    for (std::size_t k = 0; k < steps.size(); ++k) {
      r = apply_step(r, steps[k]);
      REQUIRE(describe(r) == seen[k + 1]);
    }
    CHECK(r == s);
  }
}

TEST_CASE("completing a behavior outside the possible set violates") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    RandomProgram gen(seed);
    const auto s = settle(init(gen.program(2), 2));
    const auto handles = possible_subroutines(s);
    const Behavior b = gen.behavior();
    const bool possible = std::any_of(handles.begin(), handles.end(),
                                      [&](const SubroutineHandle& h) { return same_subtask(h.behavior, b); });
    CHECK((status(notify_completion(s, b)) == ExecStatus::Violated) == !possible);
  }
}
