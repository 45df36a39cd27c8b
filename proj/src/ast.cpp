#include "pcook/ast.hpp"

#include <algorithm>
#include <array>

namespace pcook {

namespace {

constexpr std::array<std::string_view, 6> kBehaviorNames = {
    "Chop", "Pick", "Merge", "Serve", "WashDirtyPlate", "PutOutFire"};

void collect(const Block& block, std::vector<Behavior>& out) {
  for (const auto& stmt : block) {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, Behavior>) {
            out.push_back(node);
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            collect(node.then_block, out);
            if (node.else_block) collect(*node.else_block, out);
          } else if constexpr (std::is_same_v<T, WhileStmt>) {
            collect(node.body, out);
          } else if constexpr (std::is_same_v<T, ParallelStmt>) {
            for (const auto& b : node.blocks) collect(b, out);
          } else {
            collect(node.body, out);
          }
        },
        stmt.node);
  }
}

}  // namespace

std::string_view behavior_name(BehaviorKind kind) {
  return kBehaviorNames[static_cast<std::size_t>(kind)];
}

std::optional<BehaviorKind> behavior_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kBehaviorNames.size(); ++i) {
    if (kBehaviorNames[i] == name) return static_cast<BehaviorKind>(i);
  }
  return std::nullopt;
}

int behavior_arity(BehaviorKind kind) {
  switch (kind) {
    case BehaviorKind::Merge: return 2;
    case BehaviorKind::WashDirtyPlate:
    case BehaviorKind::PutOutFire: return 0;
    default: return 1;
  }
}

Behavior chop(Item t) { return {BehaviorKind::Chop, {t}}; }
Behavior pick(Item t) { return {BehaviorKind::Pick, {t}}; }
Behavior merge(Item a, Item b) { return {BehaviorKind::Merge, {a, b}}; }
Behavior serve(Item t) { return {BehaviorKind::Serve, {t}}; }
Behavior wash_dirty_plate() { return {BehaviorKind::WashDirtyPlate, {}}; }
Behavior put_out_fire() { return {BehaviorKind::PutOutFire, {}}; }

Behavior canonical(const Behavior& b) {
  Behavior out = b;
  if (out.kind == BehaviorKind::Merge && out.args.size() == 2 && out.args[1] < out.args[0]) {
    std::swap(out.args[0], out.args[1]);
  }
  return out;
}

bool same_subtask(const Behavior& a, const Behavior& b) { return canonical(a) == canonical(b); }

std::string to_string(const Behavior& b) {
  std::string out(behavior_name(b.kind));
  out += '(';
  for (std::size_t i = 0; i < b.args.size(); ++i) {
    if (i > 0) out += ',';
    out += item_name(b.args[i]);
  }
  out += ')';
  return out;
}

Query is_ordered(Item t) { return {QueryKind::IsOrdered, t}; }
Query is_there(Item t) { return {QueryKind::IsThere, t}; }
Query is_on_fire() { return {QueryKind::IsOnFire, std::nullopt}; }

std::string to_string(const Query& q) {
  switch (q.kind) {
    case QueryKind::IsOnFire: return "IsOnFire()";
    case QueryKind::IsOrdered:
      return "is_ordered(" + std::string(q.arg ? item_name(*q.arg) : "?") + ")";
    case QueryKind::IsThere:
      return "is_there(" + std::string(q.arg ? item_name(*q.arg) : "?") + ")";
  }
  return "?";
}

std::string to_string(const Condition& c) { return c.query ? to_string(*c.query) : "True"; }

bool IfStmt::operator==(const IfStmt& o) const {
  return cond == o.cond && then_block == o.then_block && else_block == o.else_block;
}
bool WhileStmt::operator==(const WhileStmt& o) const { return cond == o.cond && body == o.body; }
bool ParallelStmt::operator==(const ParallelStmt& o) const { return blocks == o.blocks; }
bool RepeatStmt::operator==(const RepeatStmt& o) const { return body == o.body && count == o.count; }
bool Statement::operator==(const Statement& o) const { return node == o.node; }
bool Program::operator==(const Program& o) const { return body == o.body; }

std::vector<Behavior> behaviors_of(const Program& p) {
  std::vector<Behavior> out;
  collect(p.body, out);
  return out;
}

}  // namespace pcook
