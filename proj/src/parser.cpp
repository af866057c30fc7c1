#include "selfred/parser.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <sstream>
#include <string>

#include "selfred/errors.hpp"

namespace selfred {

namespace {

class InfixParser {
 public:
  explicit InfixParser(std::string_view text) : text_(text) {}

  NodePtr parse_all() {
    NodePtr node = parse_or();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return node;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError(message, pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr parse_or() {
    std::vector<NodePtr> terms{parse_and()};
    while (accept('|')) terms.push_back(parse_and());
    return make_or(std::move(terms));
  }

  NodePtr parse_and() {
    std::vector<NodePtr> factors{parse_unary()};
    while (accept('&')) factors.push_back(parse_unary());
    return make_and(std::move(factors));
  }

  NodePtr parse_unary() {
    if (accept('!')) return make_not(parse_unary());
    return parse_atom();
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos_ == text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == 'T' || c == 'F') {
      ++pos_;
      return make_const(c == 'T');
    }
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_or();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'x') {
      const std::size_t start = ++pos_;
      if (pos_ == text_.size() || text_[pos_] < '1' || text_[pos_] > '9') {
        fail("variable index must start with a digit 1-9");
      }
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      VarIndex index = 0;
      auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, index);
      if (ec != std::errc() || ptr != text_.data() + pos_) {
        pos_ = start;
        fail("variable index out of range");
      }
      return make_var(index);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text) { return Formula(InfixParser(text).parse_all()); }

Formula parse_dimacs(std::string_view text) {
  std::size_t offset = 0;
  bool have_header = false;
  long long declared_vars = 0;
  long long declared_clauses = 0;
  std::vector<NodePtr> clauses;
  std::vector<NodePtr> current;

  while (offset <= text.size()) {
    std::size_t end = text.find('\n', offset);
    if (end == std::string_view::npos) end = text.size();
    const std::string line(text.substr(offset, end - offset));
    const std::size_t line_start = offset;
    offset = end + 1;

    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == 'c' || line[first] == '%') continue;

    std::istringstream in(line);
    if (line[first] == 'p') {
      std::string p, cnf;
      if (have_header || !(in >> p >> cnf >> declared_vars >> declared_clauses) || cnf != "cnf" ||
          declared_vars < 0 || declared_clauses < 0) {
        throw SyntaxError("malformed problem line", line_start + first);
      }
      have_header = true;
      continue;
    }
    if (!have_header) throw SyntaxError("clause before 'p cnf' header", line_start + first);

    std::string token;
    while (in >> token) {
      long long lit = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), lit);
      const std::size_t at = line_start + line.find(token);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw SyntaxError("bad literal '" + token + "'", at);
      }
      if (lit == 0) {
        clauses.push_back(current.empty() ? make_const(false) : make_or(std::move(current)));
        current.clear();
        continue;
      }
      const long long var = lit < 0 ? -lit : lit;
      if (var > declared_vars || var > std::numeric_limits<VarIndex>::max()) {
        throw SyntaxError("literal exceeds declared variable count", at);
      }
      NodePtr atom = make_var(static_cast<VarIndex>(var));
      current.push_back(lit < 0 ? make_not(std::move(atom)) : std::move(atom));
    }
  }
  if (!have_header) throw SyntaxError("missing 'p cnf' header", text.size());
  if (!current.empty()) throw SyntaxError("last clause is not terminated by 0", text.size());
  if (static_cast<long long>(clauses.size()) != declared_clauses) {
    throw SyntaxError("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                          std::to_string(clauses.size()),
                      text.size());
  }
  return Formula(make_and(std::move(clauses)));
}

}  // namespace selfred
