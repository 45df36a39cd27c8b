#include <string>

#include "pcook/dsl.hpp"

namespace pcook {

namespace {

void emit_block(const Block& block, int depth, std::string& out);

void line(std::string& out, int depth, const std::string& text) {
  out.append(static_cast<std::size_t>(depth) * 4, ' ');
  out += text;
  out += '\n';
}

void emit_statement(const Statement& stmt, int depth, std::string& out) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Behavior>) {
          line(out, depth, to_string(node));
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          line(out, depth, "if " + to_string(node.cond) + ":");
          emit_block(node.then_block, depth + 1, out);
          if (node.else_block) {
            line(out, depth, "else:");
            emit_block(*node.else_block, depth + 1, out);
          }
        } else if constexpr (std::is_same_v<T, WhileStmt>) {
          line(out, depth, "while " + to_string(node.cond) + ":");
          emit_block(node.body, depth + 1, out);
        } else if constexpr (std::is_same_v<T, ParallelStmt>) {
          line(out, depth, "parallel:");
          for (std::size_t i = 0; i < node.blocks.size(); ++i) {
            line(out, depth + 1, std::to_string(i + 1) + ":");
            emit_block(node.blocks[i], depth + 2, out);
          }
        } else {
          line(out, depth, node.count ? "repeat(" + std::to_string(*node.count) + "):" : "repeat:");
          emit_block(node.body, depth + 1, out);
        }
      },
      stmt.node);
}

void emit_block(const Block& block, int depth, std::string& out) {
  for (const auto& stmt : block) emit_statement(stmt, depth, out);
}

}  // namespace

std::string format_program(const Program& p) {
  std::string out;
  emit_block(p.body, 0, out);
  return out;
}

}  // namespace pcook
