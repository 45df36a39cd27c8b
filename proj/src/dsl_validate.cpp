#include "pcook/dsl.hpp"

namespace pcook {

namespace {

class Validator {
 public:
  std::vector<Diagnostic> run(const Program& p) {
    if (p.body.empty()) report("program body is empty", "body");
    block(p.body, "body");
    return std::move(out_);
  }

 private:
  void report(std::string message, const std::string& where) {
    out_.push_back(Diagnostic{std::move(message), where});
  }

  void block(const Block& b, const std::string& where) {
    if (b.empty()) report("block is empty", where);
    for (std::size_t i = 0; i < b.size(); ++i) {
      statement(b[i], where + "[" + std::to_string(i) + "]");
    }
  }

  void condition(const Condition& c, const std::string& where) {
    if (!c.query) return;
    const Query& q = *c.query;
    if (q.kind == QueryKind::IsOnFire) {
      if (q.arg) report("IsOnFire takes no argument", where);
      return;
    }
    if (!q.arg) {
      report("query requires an item argument", where);
    } else if (!is_dsl_item(*q.arg)) {
      report(std::string(item_name(*q.arg)) + " is not a program item", where);
    }
  }

  void behavior(const Behavior& b, const std::string& where) {
    const int arity = behavior_arity(b.kind);
    if (static_cast<int>(b.args.size()) != arity) {
      report(std::string(behavior_name(b.kind)) + " takes " + std::to_string(arity) + " argument(s)",
             where);
      return;
    }
    for (Item item : b.args) {
      if (!is_dsl_item(item)) {
        report(std::string(item_name(item)) + " is not a program item", where);
        return;
      }
    }
    switch (b.kind) {
      case BehaviorKind::Chop:
        if (!is_fresh(b.args[0])) {
          report("Chop requires a fresh ingredient, got " + std::string(item_name(b.args[0])), where);
        }
        break;
      case BehaviorKind::Merge:
        if (!merge_result(b.args[0], b.args[1])) {
          report("Merge(" + std::string(item_name(b.args[0])) + "," +
                     std::string(item_name(b.args[1])) + ") does not compose",
                 where);
        }
        break;
      case BehaviorKind::Serve:
        if (!is_servable(b.args[0])) {
          report("Serve requires a plated dish, got " + std::string(item_name(b.args[0])), where);
        }
        break;
      default: break;
    }
  }

  void statement(const Statement& s, const std::string& where) {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, Behavior>) {
            behavior(node, where);
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            condition(node.cond, where);
            block(node.then_block, where + ".then");
            if (node.else_block) block(*node.else_block, where + ".else");
          } else if constexpr (std::is_same_v<T, WhileStmt>) {
            condition(node.cond, where);
            block(node.body, where + ".while");
          } else if constexpr (std::is_same_v<T, ParallelStmt>) {
            if (node.blocks.size() < 2) report("parallel needs at least two blocks", where);
            for (std::size_t i = 0; i < node.blocks.size(); ++i) {
              block(node.blocks[i], where + ".parallel[" + std::to_string(i) + "]");
            }
          } else {
            if (node.count && *node.count < 1) report("repeat count must be at least 1", where);
            block(node.body, where + ".repeat");
          }
        },
        s.node);
  }

  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> validate(const Program& p) { return Validator().run(p); }

}  // namespace pcook
