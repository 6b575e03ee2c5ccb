/*
 * Copyright (c) 2026 The kenverify Authors. All Rights Reserved
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "expr.hpp"

#include "error.hpp"

#include <array>
#include <bit>
#include <cctype>
#include <cstdint>
#include <charconv>
#include <cmath>
#include <functional>
#include <numbers>

namespace kv::expr {

namespace {

NodePtr make_number(double v)
{
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Number;
  n->number = v;
  return n;
}

NodePtr make_unary(NodeKind kind, Function fn, NodePtr operand)
{
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->fn = fn;
  n->lhs = std::move(operand);
  return n;
}

NodePtr make_binary(BinaryOp op, NodePtr l, NodePtr r)
{
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Binary;
  n->op = op;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

constexpr std::array<std::pair<std::string_view, Function>, 6> kFunctions{{
  {"sin", Function::Sin},
  {"cos", Function::Cos},
  {"tan", Function::Tan},
  {"exp", Function::Exp},
  {"log", Function::Log},
  {"sqrt", Function::Sqrt},
}};

bool is_atom(const Node &n)
{
  return n.kind == NodeKind::Number || n.kind == NodeKind::Constant || n.kind == NodeKind::Variable ||
         n.kind == NodeKind::Call;
}

char op_char(BinaryOp op)
{
  switch (op)
  {
    case BinaryOp::Add: return '+';
    case BinaryOp::Sub: return '-';
    case BinaryOp::Mul: return '*';
    case BinaryOp::Div: return '/';
    case BinaryOp::Pow: return '^';
  }
  return '?';
}

void write(const Node &n, std::string &out);

void write_operand(const Node &n, std::string &out)
{
  if (is_atom(n))
  {
    write(n, out);
    return;
  }
  out += '(';
  write(n, out);
  out += ')';
}

void write(const Node &n, std::string &out)
{
  switch (n.kind)
  {
    case NodeKind::Number:
    {
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof buf, n.number);
      out.append(buf, res.ptr);
      break;
    }
    case NodeKind::Constant:
    case NodeKind::Variable: out += n.name; break;
    case NodeKind::Negate:
      out += '-';
      write_operand(*n.lhs, out);
      break;
    case NodeKind::Binary:
      write_operand(*n.lhs, out);
      out += op_char(n.op);
      write_operand(*n.rhs, out);
      break;
    case NodeKind::Call:
      out += function_name(n.fn);
      out += '(';
      write(*n.lhs, out);
      out += ')';
      break;
  }
}

bool equal(const Node &a, const Node &b)
{
  if (a.kind != b.kind)
    return false;
  switch (a.kind)
  {
    case NodeKind::Number: return std::bit_cast<std::uint64_t>(a.number) == std::bit_cast<std::uint64_t>(b.number);
    case NodeKind::Constant:
    case NodeKind::Variable: return a.name == b.name;
    case NodeKind::Negate: return equal(*a.lhs, *b.lhs);
    case NodeKind::Call: return a.fn == b.fn && equal(*a.lhs, *b.lhs);
    case NodeKind::Binary: return a.op == b.op && equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
  }
  return false;
}

void collect(const Node &n, std::set<std::string> &names)
{
  if (n.kind == NodeKind::Variable)
    names.insert(n.name);
  if (n.lhs)
    collect(*n.lhs, names);
  if (n.rhs)
    collect(*n.rhs, names);
}

class Parser
{
public:
  explicit Parser(std::string_view text) : s_(text) {}

  Expr run()
  {
    skip_ws();
    if (pos_ >= s_.size())
      throw ParseError("empty expression", pos_, "an expression");
    NodePtr e = expression();
    skip_ws();
    if (pos_ < s_.size())
    {
      const char c = s_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(' || c == '.')
        throw ParseError("implicit multiplication is not supported", pos_, "an operator");
      throw ParseError(std::string("unexpected character '") + c + "'", pos_, "an operator or end of input");
    }
    return Expr(std::move(e));
  }

private:
  void skip_ws()
  {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool accept(char c)
  {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c)
    {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expression()
  {
    NodePtr lhs = term();
    for (;;)
    {
      if (accept('+'))
        lhs = make_binary(BinaryOp::Add, lhs, term());
      else if (accept('-'))
        lhs = make_binary(BinaryOp::Sub, lhs, term());
      else
        return lhs;
    }
  }

  NodePtr term()
  {
    NodePtr lhs = unary();
    for (;;)
    {
      if (accept('*'))
        lhs = make_binary(BinaryOp::Mul, lhs, unary());
      else if (accept('/'))
        lhs = make_binary(BinaryOp::Div, lhs, unary());
      else
        return lhs;
    }
  }

  NodePtr unary()
  {
    if (accept('-'))
      return make_unary(NodeKind::Negate, Function::Sin, unary());
    return power();
  }

  NodePtr power()
  {
    NodePtr base = primary();
    if (accept('^'))
      return make_binary(BinaryOp::Pow, base, unary()); // right associative; "2^-1" allowed
    return base;
  }

  NodePtr primary()
  {
    skip_ws();
    if (pos_ >= s_.size())
      throw ParseError("unexpected end of input", pos_, "a number, name or '('");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return identifier();
    if (c == '(')
    {
      ++pos_;
      NodePtr inner = expression();
      if (!accept(')'))
        throw ParseError("unbalanced parenthesis", pos_, "')'");
      return inner;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_, "a number, name or '('");
  }

  NodePtr number()
  {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t count = digits();
    if (pos_ < s_.size() && s_[pos_] == '.')
    {
      ++pos_;
      count += digits();
    }
    if (count == 0)
      throw ParseError("malformed number", start, "digits");
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E'))
    {
      std::size_t look = pos_ + 1;
      if (look < s_.size() && (s_[look] == '+' || s_[look] == '-'))
        ++look;
      if (look < s_.size() && std::isdigit(static_cast<unsigned char>(s_[look])))
      {
        pos_ = look;
        digits();
      }
    }
    double v = 0.0;
    auto res = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (res.ec != std::errc() || res.ptr != s_.data() + pos_)
      throw ParseError("malformed number", start, "a decimal literal");
    return make_number(v);
  }

  NodePtr identifier()
  {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    const std::string name(s_.substr(start, pos_ - start));
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '(')
    {
      for (const auto &[fname, fn] : kFunctions)
      {
        if (fname == name)
        {
          ++pos_;
          NodePtr arg = expression();
          if (!accept(')'))
            throw ParseError("unbalanced parenthesis in call to " + name, pos_, "')'");
          return make_unary(NodeKind::Call, fn, std::move(arg));
        }
      }
      throw ParseError("unknown function '" + name + "'", start, "one of sin, cos, tan, exp, log, sqrt");
    }
    if (name == "pi" || name == "e")
      return Expr::constant(name).node();
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Variable;
    n->name = name;
    return n;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

} // namespace

// ---------------------------------------------------------------------------

Expr::Expr() : root_(make_number(0.0)) {}

Expr Expr::number(double value)
{
  if (std::signbit(value) && value != 0.0)
    return Expr(make_unary(NodeKind::Negate, Function::Sin, make_number(-value)));
  return Expr(make_number(value == 0.0 ? 0.0 : value));
}

Expr Expr::variable(std::string name)
{
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Variable;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::constant(std::string_view name)
{
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Constant;
  n->name = std::string(name);
  if (name == "pi")
    n->number = std::numbers::pi;
  else if (name == "e")
    n->number = std::numbers::e;
  else
    throw Error("unknown constant '" + std::string(name) + "'");
  return Expr(std::move(n));
}

Expr Expr::call(Function fn, const Expr &arg) { return Expr(make_unary(NodeKind::Call, fn, arg.root_)); }

Expr operator-(const Expr &a) { return Expr(make_unary(NodeKind::Negate, Function::Sin, a.root_)); }
Expr operator+(const Expr &a, const Expr &b) { return Expr(make_binary(BinaryOp::Add, a.root_, b.root_)); }
Expr operator-(const Expr &a, const Expr &b) { return Expr(make_binary(BinaryOp::Sub, a.root_, b.root_)); }
Expr operator*(const Expr &a, const Expr &b) { return Expr(make_binary(BinaryOp::Mul, a.root_, b.root_)); }
Expr operator/(const Expr &a, const Expr &b) { return Expr(make_binary(BinaryOp::Div, a.root_, b.root_)); }
Expr pow(const Expr &a, const Expr &b) { return Expr(make_binary(BinaryOp::Pow, a.root_, b.root_)); }

std::string Expr::to_string() const { return expr::to_string(*root_); }

std::set<std::string> Expr::variables() const
{
  std::set<std::string> names;
  collect(*root_, names);
  return names;
}

bool Expr::structurally_equal(const Expr &other) const { return equal(*root_, *other.root_); }

bool Expr::references(std::string_view name) const { return variables().contains(std::string(name)); }

std::string to_string(const Node &node)
{
  std::string out;
  write(node, out);
  return out;
}

std::string function_name(Function fn)
{
  for (const auto &[name, f] : kFunctions)
    if (f == fn)
      return std::string(name);
  return "?";
}

Expr parse(std::string_view text) { return Parser(text).run(); }

// ---------------------------------------------------------------------------
// Evaluation, generic over double and Jet2.

namespace {

double value_of(double x) { return x; }
double value_of(const Jet2 &x) { return x.value(); }

double lift(double v, Index, const double *) { return v; }
Jet2 lift(double v, Index n, const Jet2 *) { return Jet2::constant(v, n); }

double unary_apply(double x, double f, double, double) { (void)x; return f; }
Jet2 unary_apply(const Jet2 &x, double f, double df, double d2f) { return x.chain(f, df, d2f); }


} // namespace

template <class T, class Ctx> struct Walker
{
  const Compiled &c;
  Ctx values;
  Index n;

  [[noreturn]] void fail(int idx, const std::string &what) const
  {
    throw DomainError(what, to_string(*c.origin_[static_cast<std::size_t>(idx)]));
  }

  T checked(int idx, T r) const
  {
    if (!std::isfinite(value_of(r)))
      fail(idx, "non-finite result");
    return r;
  }

  T run(int idx) const
  {
    const auto &node = c.nodes_[static_cast<std::size_t>(idx)];
    switch (node.kind)
    {
      case NodeKind::Number:
      case NodeKind::Constant: return lift(node.number, n, static_cast<const T *>(nullptr));
      case NodeKind::Variable: return values[static_cast<std::size_t>(node.slot)];
      case NodeKind::Negate: return -run(node.lhs);
      case NodeKind::Call: return checked(idx, call(idx, node.fn, run(node.lhs)));
      case NodeKind::Binary:
      {
        T a = run(node.lhs);
        T b = run(node.rhs);
        switch (node.op)
        {
          case BinaryOp::Add: return a + b;
          case BinaryOp::Sub: return a - b;
          case BinaryOp::Mul: return a * b;
          case BinaryOp::Div:
            if (value_of(b) == 0.0)
              fail(idx, "division by zero");
            return checked(idx, a / b);
          case BinaryOp::Pow: return checked(idx, power(idx, a, b));
        }
      }
    }
    return lift(0.0, n, static_cast<const T *>(nullptr));
  }

  T call(int idx, Function fn, const T &a) const
  {
    const double x = value_of(a);
    switch (fn)
    {
      case Function::Sin: return unary_apply(a, std::sin(x), std::cos(x), -std::sin(x));
      case Function::Cos: return unary_apply(a, std::cos(x), -std::sin(x), -std::cos(x));
      case Function::Tan:
      {
        if (std::cos(x) == 0.0)
          fail(idx, "tan at a pole");
        const double t = std::tan(x);
        return unary_apply(a, t, 1.0 + t * t, 2.0 * t * (1.0 + t * t));
      }
      case Function::Exp:
      {
        const double e = std::exp(x);
        return unary_apply(a, e, e, e);
      }
      case Function::Log:
        if (!(x > 0.0))
          fail(idx, "log of non-positive value");
        return unary_apply(a, std::log(x), 1.0 / x, -1.0 / (x * x));
      case Function::Sqrt:
      {
        if (x < 0.0)
          fail(idx, "sqrt of negative value");
        const double s = std::sqrt(x);
        if constexpr (std::is_same_v<T, Jet2>)
        {
          if (s == 0.0)
            fail(idx, "sqrt is not differentiable at 0");
          return unary_apply(a, s, 0.5 / s, -0.25 / (s * x));
        }
        else
        {
          return s;
        }
      }
    }
    return a;
  }

  T power(int idx, const T &a, const T &b) const
  {
    const double x = value_of(a);
    const double k = value_of(b);
    const bool integral = std::floor(k) == k;
    if (x < 0.0 && !integral)
      fail(idx, "negative base with non-integer exponent");
    if (x == 0.0 && k < 0.0)
      fail(idx, "division by zero");
    const double f = std::pow(x, k);
    if constexpr (std::is_same_v<T, double>)
    {
      return f;
    }
    else
    {
      if (b.is_constant())
      {
        if (k == 0.0)
          return Jet2::constant(1.0, n);
        if (x == 0.0 && !integral && k < 2.0)
          fail(idx, "power is not differentiable at 0");
        const double df = k * std::pow(x, k - 1.0);
        const double d2f = k == 1.0 ? 0.0 : k * (k - 1.0) * std::pow(x, k - 2.0);
        return a.chain(f, df, d2f);
      }
      if (!(x > 0.0))
        fail(idx, "variable exponent needs a positive base");
      const double lx = std::log(x);
      return Jet2::chain2(a, b, f, k * std::pow(x, k - 1.0), f * lx, k * (k - 1.0) * std::pow(x, k - 2.0),
                          std::pow(x, k - 1.0) * (1.0 + k * lx), f * lx * lx);
    }
  }
};

Compiled::Compiled(const Expr &e, std::span<const std::string> names) : source_(e)
{
  root_ = build(e.root(), names);
  // origin_ entries were recorded by build() in node order
}

int Compiled::build(const Node &n, std::span<const std::string> names)
{
  CNode c{n.kind, n.number, -1, n.op, n.fn, -1, -1};
  if (n.kind == NodeKind::Variable)
  {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == n.name)
        c.slot = static_cast<int>(i);
    if (c.slot < 0)
      throw Error("unbound variable '" + n.name + "'");
  }
  if (n.lhs)
    c.lhs = build(*n.lhs, names);
  if (n.rhs)
    c.rhs = build(*n.rhs, names);
  nodes_.push_back(c);
  // Keep a handle to the originating subtree for domain error reports.
  origin_.push_back(std::make_shared<Node>(n));
  return static_cast<int>(nodes_.size()) - 1;
}

double Compiled::eval(std::span<const double> values) const
{
  Walker<double, std::span<const double>> w{*this, values, 0};
  return w.run(root_);
}

Jet2 Compiled::eval(std::span<const Jet2> values, Index jet_size) const
{
  Walker<Jet2, std::span<const Jet2>> w{*this, values, jet_size};
  return w.run(root_);
}

double eval(const Expr &e, const std::map<std::string, double> &binding)
{
  std::vector<std::string> names;
  std::vector<double> values;
  for (const auto &[k, v] : binding)
  {
    names.push_back(k);
    values.push_back(v);
  }
  return Compiled(e, names).eval(values);
}

Jet2 eval_jet2(const Expr &e, const std::map<std::string, Jet2> &binding)
{
  std::vector<std::string> names;
  std::vector<Jet2> values;
  Index n = 0;
  for (const auto &[k, v] : binding)
  {
    names.push_back(k);
    values.push_back(v);
    n = v.size();
  }
  return Compiled(e, names).eval(values, n);
}

} // namespace kv::expr
