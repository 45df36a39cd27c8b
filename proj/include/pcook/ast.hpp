#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pcook/items.hpp"

namespace pcook {

enum class BehaviorKind : std::uint8_t { Chop, Pick, Merge, Serve, WashDirtyPlate, PutOutFire };

std::string_view behavior_name(BehaviorKind kind);
std::optional<BehaviorKind> behavior_from_name(std::string_view name);
int behavior_arity(BehaviorKind kind);

struct Behavior {
  BehaviorKind kind = BehaviorKind::Pick;
  std::vector<Item> args;

  auto operator<=>(const Behavior&) const = default;
};

Behavior chop(Item t);
Behavior pick(Item t);
Behavior merge(Item a, Item b);
Behavior serve(Item t);
Behavior wash_dirty_plate();
Behavior put_out_fire();

// True when completing `b` fulfils the subtask `a`. Merge is symmetric in its
// two arguments; everything else compares structurally.
bool same_subtask(const Behavior& a, const Behavior& b);

// Merge arguments sorted into item order.
Behavior canonical(const Behavior& b);

std::string to_string(const Behavior& b);

enum class QueryKind : std::uint8_t { IsOrdered, IsThere, IsOnFire };

struct Query {
  QueryKind kind = QueryKind::IsOnFire;
  std::optional<Item> arg;

  auto operator<=>(const Query&) const = default;
};

Query is_ordered(Item t);
Query is_there(Item t);
Query is_on_fire();

std::string to_string(const Query& q);

// A condition is either a perception query or the tautology.
struct Condition {
  std::optional<Query> query;

  bool is_tautology() const { return !query.has_value(); }
  auto operator<=>(const Condition&) const = default;
};

std::string to_string(const Condition& c);

struct Statement;
using Block = std::vector<Statement>;

struct IfStmt {
  Condition cond;
  Block then_block;
  std::optional<Block> else_block;
  bool operator==(const IfStmt&) const;
};

struct WhileStmt {
  Condition cond;
  Block body;
  bool operator==(const WhileStmt&) const;
};

struct ParallelStmt {
  std::vector<Block> blocks;
  bool operator==(const ParallelStmt&) const;
};

struct RepeatStmt {
  Block body;
  std::optional<int> count;
  bool operator==(const RepeatStmt&) const;
};

struct Statement {
  std::variant<Behavior, IfStmt, WhileStmt, ParallelStmt, RepeatStmt> node;
  bool operator==(const Statement&) const;
};

struct Program {
  Block body;
  bool operator==(const Program&) const;
};

// Every behavior in the program, in source order.
std::vector<Behavior> behaviors_of(const Program& p);

}  // namespace pcook
