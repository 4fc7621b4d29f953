#include "conemink/expr.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace conemink {

struct Expr::Node {
  char op = 0;  // 0: leaf
  double value = 0.0;
  std::string name;  // nonempty: variable leaf
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

struct Parser {
  const std::string& s;
  size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }

  NodePtr make(char op, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Expr::Node>();
    n->op = op;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
  }

  NodePtr expr() {
    NodePtr n = term();
    while (true) {
      if (eat('+'))
        n = make('+', n, term());
      else if (eat('-'))
        n = make('-', n, term());
      else
        return n;
    }
  }
  NodePtr term() {
    NodePtr n = factor();
    while (true) {
      if (eat('*'))
        n = make('*', n, factor());
      else if (eat('/'))
        n = make('/', n, factor());
      else
        return n;
    }
  }
  NodePtr factor() {
    if (eat('-')) {
      auto zero = std::make_shared<Expr::Node>();
      zero->value = 0.0;
      return make('-', zero, factor());
    }
    return power();
  }
  NodePtr power() {
    NodePtr base = atom();
    if (eat('^')) return make('^', base, factor());  // right associative
    return base;
  }
  NodePtr atom() {
    skip();
    if (eat('(')) {
      NodePtr n = expr();
      if (!eat(')')) throw std::invalid_argument("expression: missing ')'");
      return n;
    }
    if (pos >= s.size()) throw std::invalid_argument("expression: unexpected end");
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t end = pos;
      while (end < s.size() &&
             (std::isdigit(static_cast<unsigned char>(s[end])) || s[end] == '.' ||
              s[end] == 'e' || s[end] == 'E' ||
              ((s[end] == '+' || s[end] == '-') && end > pos &&
               (s[end - 1] == 'e' || s[end - 1] == 'E'))))
        ++end;
      auto n = std::make_shared<Expr::Node>();
      n->value = std::stod(s.substr(pos, end - pos));
      pos = end;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t end = pos;
      while (end < s.size() && (std::isalnum(static_cast<unsigned char>(s[end])) ||
                                s[end] == '_'))
        ++end;
      auto n = std::make_shared<Expr::Node>();
      n->name = s.substr(pos, end - pos);
      pos = end;
      return n;
    }
    throw std::invalid_argument(std::string("expression: unexpected character '") + c +
                                "'");
  }
};

double eval_node(const Expr::Node& n, const std::map<std::string, double>& env) {
  if (n.op == 0) {
    if (n.name.empty()) return n.value;
    auto it = env.find(n.name);
    if (it == env.end())
      throw std::invalid_argument("expression: unknown identifier '" + n.name + "'");
    return it->second;
  }
  double a = eval_node(*n.lhs, env);
  double b = eval_node(*n.rhs, env);
  switch (n.op) {
    case '+': return a + b;
    case '-': return a - b;
    case '*': return a * b;
    case '/': return a / b;
    case '^': return std::pow(a, b);
  }
  throw std::logic_error("expression: bad operator");
}

}  // namespace

Expr Expr::parse(const std::string& text) {
  Parser p{text};
  Expr e;
  e.root_ = p.expr();
  p.skip();
  if (p.pos != text.size())
    throw std::invalid_argument("expression: trailing input at '" +
                                text.substr(p.pos) + "'");
  e.text_ = text;
  return e;
}

double Expr::eval(const std::map<std::string, double>& env) const {
  if (!root_) throw std::logic_error("empty expression");
  return eval_node(*root_, env);
}

}  // namespace conemink
