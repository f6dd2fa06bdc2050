#include "spectra/expression.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>

namespace spectra::expr {

namespace {

NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& variables)
      : text_(text), variables_(variables) {}

  NodePtr parse() {
    NodePtr root = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("expression '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expression() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make({Binary{BinaryOp::add, lhs, term()}});
      } else if (accept('-')) {
        lhs = make({Binary{BinaryOp::sub, lhs, term()}});
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make({Binary{BinaryOp::mul, lhs, unary()}});
      } else if (accept('/')) {
        lhs = make({Binary{BinaryOp::div, lhs, unary()}});
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make({Negate{unary()}});
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make({Binary{BinaryOp::pow, base, unary()}});
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string ident(text_.substr(start, pos_ - start));
      if (ident == "exp" || ident == "log" || ident == "sqrt") {
        if (!accept('(')) fail("expected '(' after " + ident);
        NodePtr arg = expression();
        if (!accept(')')) fail("expected ')'");
        const Function fn = ident == "exp" ? Function::exp : ident == "log" ? Function::log : Function::sqrt;
        return make({Call{fn, arg}});
      }
      if (std::find(variables_.begin(), variables_.end(), ident) == variables_.end())
        fail("unknown identifier '" + ident + "'");
      return make({Variable{ident}});
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        pos_ = p;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    double v = 0.0;
    const auto* first = text_.data() + start;
    const auto* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) fail("malformed number");
    return make({Number{v}});
  }

  std::string_view text_;
  const std::vector<std::string>& variables_;
  std::size_t pos_ = 0;
};

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print_node(const Node& n, std::string& out) {
  std::visit(
      [&](const auto& node) {
        using K = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<K, Number>) {
          out += format_number(node.value);
        } else if constexpr (std::is_same_v<K, Variable>) {
          out += node.name;
        } else if constexpr (std::is_same_v<K, Negate>) {
          out += "(-";
          print_node(*node.operand, out);
          out += ')';
        } else if constexpr (std::is_same_v<K, Binary>) {
          static constexpr char ops[] = {'+', '-', '*', '/', '^'};
          out += '(';
          print_node(*node.lhs, out);
          out += ' ';
          out += ops[static_cast<int>(node.op)];
          out += ' ';
          print_node(*node.rhs, out);
          out += ')';
        } else {
          out += node.fn == Function::exp ? "exp(" : node.fn == Function::log ? "log(" : "sqrt(";
          print_node(*node.arg, out);
          out += ')';
        }
      },
      n.data);
}

}  // namespace

Expression Expression::parse(std::string_view text, const std::vector<std::string>& variables) {
  return Expression(Parser(text, variables).parse());
}

std::string Expression::print() const {
  std::string out;
  if (root_) print_node(*root_, out);
  return out;
}

bool structurally_equal(const Node& a, const Node& b) {
  if (a.data.index() != b.data.index()) return false;
  return std::visit(
      [&](const auto& lhs) -> bool {
        using K = std::decay_t<decltype(lhs)>;
        const auto& rhs = std::get<K>(b.data);
        if constexpr (std::is_same_v<K, Number>) {
          return lhs.value == rhs.value;
        } else if constexpr (std::is_same_v<K, Variable>) {
          return lhs.name == rhs.name;
        } else if constexpr (std::is_same_v<K, Negate>) {
          return structurally_equal(*lhs.operand, *rhs.operand);
        } else if constexpr (std::is_same_v<K, Binary>) {
          return lhs.op == rhs.op && structurally_equal(*lhs.lhs, *rhs.lhs) && structurally_equal(*lhs.rhs, *rhs.rhs);
        } else {
          return lhs.fn == rhs.fn && structurally_equal(*lhs.arg, *rhs.arg);
        }
      },
      a.data);
}

bool operator==(const Expression& a, const Expression& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  return structurally_equal(a.root(), b.root());
}

}  // namespace spectra::expr
