#include <cctype>
#include <charconv>
#include <cstdio>
#include <string>

#include "boxnc/function.hpp"

namespace boxnc {
namespace {

ExprPtr make_node(ExprNode node) {
  return std::make_shared<const ExprNode>(std::move(node));
}

class Parser {
 public:
  Parser(std::string_view text, int arity) : text_(text), arity_(arity) {}

  ExprPtr run() {
    ExprPtr e = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) error("unexpected trailing input");
    return e;
  }

 private:
  std::string_view text_;
  int arity_;
  std::size_t pos_ = 0;

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::parse_error,
         "expression error at position " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  ExprPtr parse_sum() {
    ExprPtr left = parse_term();
    for (;;) {
      if (eat('+')) {
        left = make_node({ExprNode::Kind::add, 0, -1, 0, left, parse_term()});
      } else if (eat('-')) {
        left = make_node({ExprNode::Kind::sub, 0, -1, 0, left, parse_term()});
      } else {
        return left;
      }
    }
  }

  ExprPtr parse_term() {
    ExprPtr left = parse_unary();
    for (;;) {
      if (eat('*')) {
        left = make_node({ExprNode::Kind::mul, 0, -1, 0, left, parse_unary()});
      } else if (eat('/')) {
        left = make_node({ExprNode::Kind::div, 0, -1, 0, left, parse_unary()});
      } else {
        return left;
      }
    }
  }

  ExprPtr parse_unary() {
    if (eat('-')) {
      return make_node({ExprNode::Kind::neg, 0, -1, 0, parse_unary(), nullptr});
    }
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    if (eat('^')) {
      int k = parse_int_literal("integer exponent required after '^'");
      return make_node({ExprNode::Kind::pow_fn, 0, -1, k, base, nullptr});
    }
    return base;
  }

  int parse_int_literal(const char* what) {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    int value = 0;
    auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (res.ec != std::errc() || res.ptr != text_.data() + pos_ || start == pos_) error(what);
    return value;
  }

  ExprPtr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) error("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr inner = parse_sum();
      if (!eat(')')) error("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
    error(std::string("unexpected character '") + c + "'");
  }

  ExprPtr parse_number() {
    std::size_t start = pos_;
    double value = 0.0;
    auto res = std::from_chars(text_.data() + start, text_.data() + text_.size(), value);
    if (res.ec != std::errc()) error("malformed number");
    pos_ = static_cast<std::size_t>(res.ptr - text_.data());
    return make_node({ExprNode::Kind::constant, value, -1, 0, nullptr, nullptr});
  }

  ExprPtr parse_ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    std::string name(text_.substr(start, pos_ - start));

    if (name.size() >= 2 && name[0] == 'x' &&
        std::isdigit(static_cast<unsigned char>(name[1]))) {
      int index = 0;
      auto res = std::from_chars(name.data() + 1, name.data() + name.size(), index);
      if (res.ec == std::errc() && res.ptr == name.data() + name.size()) {
        if (index < 1 || index > arity_) {
          pos_ = start;
          error("variable " + name + " out of range for arity " + std::to_string(arity_));
        }
        return make_node({ExprNode::Kind::variable, 0, index - 1, 0, nullptr, nullptr});
      }
    }

    if (name == "exp" || name == "abs") {
      if (!eat('(')) error("expected '(' after " + name);
      ExprPtr arg = parse_sum();
      if (!eat(')')) error("expected ')'");
      auto kind = name == "exp" ? ExprNode::Kind::exp_fn : ExprNode::Kind::abs_fn;
      return make_node({kind, 0, -1, 0, arg, nullptr});
    }
    if (name == "tpow_plus" || name == "tpow_minus") {
      if (!eat('(')) error("expected '(' after " + name);
      ExprPtr arg = parse_sum();
      if (!eat(',')) error("expected ',' in " + name);
      int k = parse_int_literal("integer exponent required");
      if (k < 0) error("truncated-power exponent must be >= 0");
      if (!eat(')')) error("expected ')'");
      auto kind = name == "tpow_plus" ? ExprNode::Kind::tpow_plus : ExprNode::Kind::tpow_minus;
      return make_node({kind, 0, -1, k, arg, nullptr});
    }
    pos_ = start;
    error("unknown identifier '" + name + "'");
  }
};

int precedence(ExprNode::Kind kind) {
  switch (kind) {
    case ExprNode::Kind::add:
    case ExprNode::Kind::sub:
      return 1;
    case ExprNode::Kind::mul:
    case ExprNode::Kind::div:
      return 2;
    case ExprNode::Kind::neg:
      return 3;
    case ExprNode::Kind::pow_fn:
      return 4;
    default:
      return 5;
  }
}

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void print_rec(const ExprNode& node, std::string& out) {
  auto child = [&](const ExprNode& c, int min_prec) {
    if (precedence(c.kind) < min_prec) {
      out += '(';
      print_rec(c, out);
      out += ')';
    } else {
      print_rec(c, out);
    }
  };
  const int p = precedence(node.kind);
  switch (node.kind) {
    case ExprNode::Kind::constant:
      out += format_double(node.value);
      break;
    case ExprNode::Kind::variable:
      out += "x" + std::to_string(node.var_index + 1);
      break;
    case ExprNode::Kind::neg:
      out += '-';
      child(*node.lhs, p + 1);
      break;
    case ExprNode::Kind::exp_fn:
    case ExprNode::Kind::abs_fn:
      out += node.kind == ExprNode::Kind::exp_fn ? "exp(" : "abs(";
      print_rec(*node.lhs, out);
      out += ')';
      break;
    case ExprNode::Kind::add:
    case ExprNode::Kind::sub:
      child(*node.lhs, p);
      out += node.kind == ExprNode::Kind::add ? "+" : "-";
      child(*node.rhs, p + 1);
      break;
    case ExprNode::Kind::mul:
    case ExprNode::Kind::div:
      child(*node.lhs, p);
      out += node.kind == ExprNode::Kind::mul ? "*" : "/";
      child(*node.rhs, p + 1);
      break;
    case ExprNode::Kind::pow_fn:
      child(*node.lhs, p + 1);
      out += "^" + std::to_string(node.ipow_exponent);
      break;
    case ExprNode::Kind::tpow_plus:
    case ExprNode::Kind::tpow_minus:
      out += node.kind == ExprNode::Kind::tpow_plus ? "tpow_plus(" : "tpow_minus(";
      print_rec(*node.lhs, out);
      out += "," + std::to_string(node.ipow_exponent) + ")";
      break;
  }
}

}  // namespace

ExprPtr parse_expression(std::string_view text, int arity) {
  if (arity < 1) fail(ErrorCode::invalid_argument, "expression arity must be >= 1");
  return Parser(text, arity).run();
}

std::string print_expression(const ExprNode& node) {
  std::string out;
  print_rec(node, out);
  return out;
}

}  // namespace boxnc
