#include <cctype>
#include <charconv>
#include <sstream>

#include "pcook/dsl.hpp"

namespace pcook {

ParseError::ParseError(const std::string& what, int line, int column)
    : std::runtime_error("line " + std::to_string(line) +
                         (column > 0 ? ", column " + std::to_string(column) : std::string()) + ": " +
                         what),
      line_(line),
      column_(column) {}

namespace {

struct Line {
  int number = 0;
  int indent = 0;
  std::string text;
  bool label = false;
  int label_value = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool starts_with_word(std::string_view text, std::string_view word) {
  if (text.substr(0, word.size()) != word) return false;
  if (text.size() == word.size()) return true;
  const char next = text[word.size()];
  return !(std::isalnum(static_cast<unsigned char>(next)) || next == '_');
}

// Splits text into logical lines. A `N:` / `N.` label with trailing content
// becomes two lines: the label, and the content at its own column.
std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++number;
    start = end + 1;

    std::string expanded;
    for (char ch : raw) {
      if (ch == '\t') {
        expanded.append(4 - expanded.size() % 4, ' ');
      } else if (ch != '\r') {
        expanded += ch;
      }
    }
    if (auto hash = expanded.find('#'); hash != std::string::npos) expanded.resize(hash);
    std::size_t indent = 0;
    while (indent < expanded.size() && expanded[indent] == ' ') ++indent;
    std::string_view body = trim(std::string_view(expanded).substr(indent));
    if (body.empty()) {
      if (end == text.size()) break;
      continue;
    }

    std::size_t digits = 0;
    while (digits < body.size() && std::isdigit(static_cast<unsigned char>(body[digits]))) ++digits;
    if (digits > 0 && digits < body.size() && (body[digits] == ':' || body[digits] == '.')) {
      Line label;
      label.number = number;
      label.indent = static_cast<int>(indent);
      label.text = std::string(body.substr(0, digits + 1));
      label.label = true;
      std::from_chars(body.data(), body.data() + digits, label.label_value);
      out.push_back(label);
      std::string_view rest = body.substr(digits + 1);
      std::size_t lead = 0;
      while (lead < rest.size() && rest[lead] == ' ') ++lead;
      rest = trim(rest);
      if (!rest.empty()) {
        Line content;
        content.number = number;
        content.indent = static_cast<int>(indent + digits + 1 + lead);
        content.text = std::string(rest);
        out.push_back(content);
      }
    } else {
      out.push_back(Line{number, static_cast<int>(indent), std::string(body), false, 0});
    }
    if (end == text.size()) break;
  }
  return out;
}

std::optional<Item> query_item(std::string_view name) {
  if (name == "Onion") return Item::ChoppedOnion;
  if (name == "Tomato") return Item::ChoppedTomato;
  return item_from_name(name);
}

class Parser {
 public:
  explicit Parser(std::vector<Line> lines) : lines_(std::move(lines)) {}

  Program parse() {
    Program program;
    if (lines_.empty()) throw SyntaxError("empty program", 1, 0);
    int top = -1;
    if (lines_[0].text == "def main():") {
      if (lines_[0].indent != 0) throw SyntaxError("unexpected indent", lines_[0].number, 1);
      ++pos_;
      top = 0;
    }
    program.body = parse_block(top, lines_[0].number);
    if (pos_ < lines_.size()) {
      const auto& line = lines_[pos_];
      throw SyntaxError("unindent does not match any outer indentation level", line.number,
                        line.indent + 1);
    }
    return program;
  }

 private:
  Block parse_block(int parent_indent, int header_line) {
    if (pos_ >= lines_.size() || lines_[pos_].indent <= parent_indent) {
      const int line = pos_ < lines_.size() ? lines_[pos_].number : header_line;
      throw SyntaxError("expected an indented block", line, 0);
    }
    const int indent = lines_[pos_].indent;
    Block block;
    while (pos_ < lines_.size()) {
      const auto& line = lines_[pos_];
      if (line.indent < indent) {
        if (line.indent > parent_indent && !(line.indent <= parent_indent)) {
          throw SyntaxError("unindent does not match any outer indentation level", line.number,
                            line.indent + 1);
        }
        break;
      }
      if (line.indent > indent) throw SyntaxError("unexpected indent", line.number, line.indent + 1);
      block.push_back(parse_statement());
    }
    return block;
  }

  Statement parse_statement() {
    const Line line = lines_[pos_];
    const std::string_view text = line.text;
    if (line.label) throw SyntaxError("block label outside of parallel", line.number, line.indent + 1);

    if (starts_with_word(text, "if") || starts_with_word(text, "If")) {
      IfStmt stmt;
      stmt.cond = parse_header_condition(line, 2);
      ++pos_;
      stmt.then_block = parse_block(line.indent, line.number);
      if (pos_ < lines_.size() && lines_[pos_].indent == line.indent && !lines_[pos_].label &&
          trim(lines_[pos_].text) == "else:") {
        const int else_line = lines_[pos_].number;
        ++pos_;
        stmt.else_block = parse_block(line.indent, else_line);
      }
      return Statement{std::move(stmt)};
    }
    if (text == "else:") throw SyntaxError("else without matching if", line.number, line.indent + 1);
    if (starts_with_word(text, "while") || starts_with_word(text, "While")) {
      WhileStmt stmt;
      stmt.cond = parse_header_condition(line, 5);
      ++pos_;
      stmt.body = parse_block(line.indent, line.number);
      return Statement{std::move(stmt)};
    }
    if (text == "parallel:" || text == "Parallel:") {
      ++pos_;
      return Statement{parse_parallel(line)};
    }
    if (starts_with_word(text, "repeat") || starts_with_word(text, "Repeat")) {
      RepeatStmt stmt;
      stmt.count = parse_repeat_count(line);
      ++pos_;
      stmt.body = parse_block(line.indent, line.number);
      return Statement{std::move(stmt)};
    }
    ++pos_;
    return Statement{parse_behavior(line)};
  }

  ParallelStmt parse_parallel(const Line& header) {
    ParallelStmt stmt;
    if (pos_ >= lines_.size() || lines_[pos_].indent <= header.indent) {
      throw SyntaxError("expected numbered blocks after parallel:", header.number, 0);
    }
    const int label_indent = lines_[pos_].indent;
    int expected = 1;
    while (pos_ < lines_.size() && lines_[pos_].indent == label_indent) {
      const Line label = lines_[pos_];
      if (!label.label) {
        throw SyntaxError("expected a numbered block label like '" + std::to_string(expected) + ":'",
                          label.number, label.indent + 1);
      }
      if (label.label_value != expected) {
        throw SyntaxError("expected block label " + std::to_string(expected), label.number,
                          label.indent + 1);
      }
      ++pos_;
      stmt.blocks.push_back(parse_block(label_indent, label.number));
      ++expected;
    }
    if (pos_ < lines_.size() && lines_[pos_].indent > header.indent &&
        lines_[pos_].indent < label_indent) {
      throw SyntaxError("unindent does not match any outer indentation level", lines_[pos_].number,
                        lines_[pos_].indent + 1);
    }
    return stmt;
  }

  std::optional<int> parse_repeat_count(const Line& line) {
    std::string_view rest = trim(std::string_view(line.text).substr(6));
    if (rest.empty() || rest.back() != ':') {
      throw SyntaxError("expected ':' after repeat", line.number, line.indent + 1);
    }
    rest = trim(rest.substr(0, rest.size() - 1));
    if (rest.empty()) return std::nullopt;
    if (rest.front() == '(' && rest.back() == ')') rest = trim(rest.substr(1, rest.size() - 2));
    int value = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
    if (ec != std::errc() || ptr != rest.data() + rest.size()) {
      throw SyntaxError("repeat count must be an integer", line.number, line.indent + 1);
    }
    return value;
  }

  Condition parse_header_condition(const Line& line, std::size_t keyword_length) {
    std::string_view rest = trim(std::string_view(line.text).substr(keyword_length));
    if (rest.empty() || rest.back() != ':') {
      throw SyntaxError("expected ':' at end of condition header", line.number,
                        line.indent + static_cast<int>(line.text.size()));
    }
    rest = trim(rest.substr(0, rest.size() - 1));
    return parse_condition(rest, line);
  }

  static bool wrapped_in_parens(std::string_view s) {
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') return false;
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      if (s[i] == ')') --depth;
      if (depth == 0 && i + 1 < s.size()) return false;
    }
    return true;
  }

  Condition parse_condition(std::string_view text, const Line& line) {
    text = trim(text);
    while (wrapped_in_parens(text)) text = trim(text.substr(1, text.size() - 2));
    const int col = line.indent + 1;
    if (text.empty()) throw SyntaxError("missing condition", line.number, col);
    if (text == "True" || text == "true" || text == "tautology" || text == "Tautology") {
      return Condition{};
    }
    std::size_t open = text.find_first_of("([");
    if (open == std::string_view::npos) {
      throw UnknownIdentifier("unknown condition '" + std::string(text) + "'", line.number, col);
    }
    const char close_char = text[open] == '(' ? ')' : ']';
    if (text.back() != close_char) throw SyntaxError("unbalanced condition brackets", line.number, col);
    const std::string_view name = trim(text.substr(0, open));
    const std::string_view arg = trim(text.substr(open + 1, text.size() - open - 2));

    Query query;
    if (name == "IsOnFire" || name == "is_on_fire") {
      if (!arg.empty()) throw ArityError("IsOnFire takes no argument", line.number, col);
      return Condition{is_on_fire()};
    }
    if (name == "is_ordered" || name == "IsOrdered") {
      query.kind = QueryKind::IsOrdered;
    } else if (name == "is_there" || name == "IsThere") {
      query.kind = QueryKind::IsThere;
    } else {
      throw UnknownIdentifier("unknown perception '" + std::string(name) + "'", line.number, col);
    }
    if (arg.empty()) throw ArityError(std::string(name) + " takes one item", line.number, col);
    if (arg.find(',') != std::string_view::npos) {
      throw ArityError(std::string(name) + " takes one item", line.number, col);
    }
    query.arg = query_item(arg);
    if (!query.arg) {
      throw UnknownIdentifier("unknown item '" + std::string(arg) + "'", line.number, col);
    }
    return Condition{query};
  }

  Behavior parse_behavior(const Line& line) {
    const std::string_view text = line.text;
    const int col = line.indent + 1;
    const std::size_t open = text.find('(');
    if (open == std::string_view::npos || text.back() != ')') {
      throw SyntaxError("expected a statement, found '" + std::string(text) + "'", line.number, col);
    }
    std::string_view name = trim(text.substr(0, open));
    if (name == "PutOffFire") name = "PutOutFire";
    const auto kind = behavior_from_name(name);
    if (!kind) {
      throw UnknownIdentifier("unknown behavior '" + std::string(name) + "'", line.number, col);
    }
    Behavior behavior;
    behavior.kind = *kind;
    const std::string_view args = trim(text.substr(open + 1, text.size() - open - 2));
    if (!args.empty()) {
      std::size_t start = 0;
      while (start <= args.size()) {
        std::size_t comma = args.find(',', start);
        if (comma == std::string_view::npos) comma = args.size();
        const std::string_view arg = trim(args.substr(start, comma - start));
        const auto item = item_from_name(arg);
        if (!item || !is_dsl_item(*item)) {
          throw UnknownIdentifier("unknown item '" + std::string(arg) + "'", line.number, col);
        }
        behavior.args.push_back(*item);
        start = comma + 1;
        if (comma == args.size()) break;
      }
    }
    if (static_cast<int>(behavior.args.size()) != behavior_arity(behavior.kind)) {
      throw ArityError(std::string(behavior_name(behavior.kind)) + " takes " +
                           std::to_string(behavior_arity(behavior.kind)) + " argument(s), got " +
                           std::to_string(behavior.args.size()),
                       line.number, col);
    }
    if (behavior.kind == BehaviorKind::Serve && !is_servable(behavior.args[0])) {
      if (auto plated = merge_result(behavior.args[0], Item::Plate); plated && is_servable(*plated)) {
        behavior.args[0] = *plated;
      }
    }
    return behavior;
  }

  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

}  // namespace

Program parse_program_unchecked(std::string_view text) { return Parser(split_lines(text)).parse(); }

Program parse_program(std::string_view text) {
  Program program = parse_program_unchecked(text);
  const auto diagnostics = validate(program);
  if (!diagnostics.empty()) {
    std::ostringstream msg;
    msg << diagnostics.front().message << " at " << diagnostics.front().where;
    if (diagnostics.size() > 1) msg << " (+" << diagnostics.size() - 1 << " more)";
    throw ValidationError(msg.str(), 1, 0);
  }
  return program;
}

}  // namespace pcook
