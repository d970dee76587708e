#include "ssmc/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <variant>

#include "ssmc/errors.hpp"

namespace ssmc {

namespace {

struct NumberNode {
  double value;
  std::string text;
};
struct CoordinateNode {
  std::size_t index;
  std::string name;
};
struct NegateNode {
  Expr operand;
};
struct BinaryNode {
  BinaryOp op;
  Expr lhs, rhs;
};
struct CallNode {
  Func func;
  Expr argument;
};

constexpr std::array<std::pair<std::string_view, Func>, 10> kFunctions{{
    {"sin", Func::Sin},
    {"cos", Func::Cos},
    {"tan", Func::Tan},
    {"sinh", Func::Sinh},
    {"cosh", Func::Cosh},
    {"tanh", Func::Tanh},
    {"exp", Func::Exp},
    {"log", Func::Log},
    {"sqrt", Func::Sqrt},
    {"abs", Func::Abs},
}};

}  // namespace

struct ExprNode {
  std::variant<NumberNode, CoordinateNode, NegateNode, BinaryNode, CallNode> data;
  bool constant = true;
};

std::string_view func_name(Func f) noexcept {
  for (const auto& [name, func] : kFunctions) {
    if (func == f) return name;
  }
  return "?";
}

Expr::Expr() : Expr(number(0.0)) {}

Expr Expr::number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return Expr(std::make_shared<const ExprNode>(ExprNode{NumberNode{value, buf}, true}));
}

Expr Expr::coordinate(std::size_t index, std::string name) {
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{CoordinateNode{index, std::move(name)}, false}));
}

Expr Expr::negate(Expr operand) {
  const bool c = operand.is_constant();
  return Expr(std::make_shared<const ExprNode>(ExprNode{NegateNode{std::move(operand)}, c}));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  const bool c = lhs.is_constant() && rhs.is_constant();
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{BinaryNode{op, std::move(lhs), std::move(rhs)}, c}));
}

Expr Expr::call(Func f, Expr argument) {
  const bool c = argument.is_constant();
  return Expr(
      std::make_shared<const ExprNode>(ExprNode{CallNode{f, std::move(argument)}, c}));
}

Expr::Kind Expr::kind() const noexcept { return static_cast<Kind>(node_->data.index()); }
bool Expr::is_constant() const noexcept { return node_->constant; }

double Expr::number_value() const { return std::get<NumberNode>(node_->data).value; }
std::size_t Expr::coordinate_index() const {
  return std::get<CoordinateNode>(node_->data).index;
}
const std::string& Expr::coordinate_name() const {
  return std::get<CoordinateNode>(node_->data).name;
}
BinaryOp Expr::binary_op() const { return std::get<BinaryNode>(node_->data).op; }
Func Expr::func() const { return std::get<CallNode>(node_->data).func; }
const Expr& Expr::operand() const {
  if (const auto* n = std::get_if<NegateNode>(&node_->data)) return n->operand;
  return std::get<CallNode>(node_->data).argument;
}
const Expr& Expr::lhs() const { return std::get<BinaryNode>(node_->data).lhs; }
const Expr& Expr::rhs() const { return std::get<BinaryNode>(node_->data).rhs; }

std::string Expr::to_string() const {
  struct Printer {
    std::string operator()(const NumberNode& n) const { return n.text; }
    std::string operator()(const CoordinateNode& c) const { return c.name; }
    std::string operator()(const NegateNode& n) const {
      return "(-" + n.operand.to_string() + ")";
    }
    std::string operator()(const BinaryNode& b) const {
      static constexpr std::array<const char*, 5> ops{" + ", " - ", " * ", " / ", " ^ "};
      return "(" + b.lhs.to_string() + ops[static_cast<int>(b.op)] + b.rhs.to_string() + ")";
    }
    std::string operator()(const CallNode& c) const {
      return std::string(func_name(c.func)) + "(" + c.argument.to_string() + ")";
    }
  };
  return std::visit(Printer{}, node_->data);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> coords)
      : text_(text), coords_(coords) {}

  Expr parse_all() {
    skip_space();
    if (pos_ == text_.size()) fail(ParseError::Kind::Syntax, "empty expression");
    Expr e = parse_sum();
    skip_space();
    if (pos_ != text_.size()) fail(ParseError::Kind::Syntax, unexpected());
    return e;
  }

 private:
  [[noreturn]] void fail(ParseError::Kind kind, const std::string& msg) const {
    throw ParseError(kind, pos_, msg);
  }

  std::string unexpected() const {
    if (pos_ >= text_.size()) return "unexpected end of input";
    return std::string("unexpected '") + text_[pos_] + "'";
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_sum() {
    Expr lhs = parse_product();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(BinaryOp::Add, std::move(lhs), parse_product());
      } else if (accept('-')) {
        lhs = Expr::binary(BinaryOp::Sub, std::move(lhs), parse_product());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_product() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(BinaryOp::Mul, std::move(lhs), parse_unary());
      } else if (accept('/')) {
        lhs = Expr::binary(BinaryOp::Div, std::move(lhs), parse_unary());
      } else {
        return lhs;
      }
    }
  }

  // Unary minus binds looser than '^': -x^2 == -(x^2).
  Expr parse_unary() {
    if (accept('-')) return Expr::negate(parse_unary());
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (accept('^')) return Expr::binary(BinaryOp::Pow, std::move(base), parse_exponent());
    return base;
  }

  // Right operand of '^' may carry its own sign: 2^-x.
  Expr parse_exponent() {
    if (accept('-')) return Expr::negate(parse_exponent());
    return parse_power();
  }

  Expr parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) fail(ParseError::Kind::Syntax, unexpected());
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = parse_sum();
      if (!accept(')')) fail(ParseError::Kind::Syntax, "expected ')'");
      return inner;
    }
    if ((c >= '0' && c <= '9') || c == '.') return parse_number();
    if (is_ident_start(c)) return parse_identifier();
    fail(ParseError::Kind::Syntax, unexpected());
  }

  static bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  Expr parse_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    }
    if (pos_ - start == 1 && text_[start] == '.') {
      pos_ = start;
      fail(ParseError::Kind::Syntax, "malformed number");
    }
    // Optional exponent: 1e-3, 2.5E+4.
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && is_digit(text_[p])) {
        while (p < text_.size() && is_digit(text_[p])) ++p;
        pos_ = p;
      }
    }
    const std::string_view lit = text_.substr(start, pos_ - start);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(lit.data(), lit.data() + lit.size(), value);
    if (ec != std::errc() || end != lit.data() + lit.size()) {
      pos_ = start;
      fail(ParseError::Kind::Syntax, "malformed number");
    }
    return Expr::number(value);
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (coords_[i] == name) return Expr::coordinate(i, std::string(name));
    }
    for (const auto& [fname, func] : kFunctions) {
      if (fname != name) continue;
      if (!accept('(')) fail(ParseError::Kind::Syntax, "expected '(' after " + std::string(name));
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == ')') {
        fail(ParseError::Kind::Arity, std::string(name) + " takes exactly one argument");
      }
      Expr arg = parse_sum();
      if (accept(',')) {
        fail(ParseError::Kind::Arity, std::string(name) + " takes exactly one argument");
      }
      if (!accept(')')) fail(ParseError::Kind::Syntax, "expected ')'");
      return Expr::call(func, std::move(arg));
    }
    pos_ = start;
    fail(ParseError::Kind::UnknownIdentifier, "unknown identifier '" + std::string(name) + "'");
  }

  std::string_view text_;
  std::span<const std::string> coords_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, std::span<const std::string> coords) {
  return Parser(text, coords).parse_all();
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

inline double value_of(double v) { return v; }
inline long double value_of(long double v) { return v; }
inline double value_of(const Jet2& v) { return v.value(); }

inline bool varies(double) { return false; }
inline bool varies(long double) { return false; }
inline bool varies(const Jet2& v) { return !v.is_constant(); }

// Integer exponents are evaluated by the power rule so negative bases work.
bool integer_exponent(const Expr& e, int& k) {
  if (!e.is_constant()) return false;
  const double v = evaluate<double>(e, std::span<const double>{});
  if (v != std::floor(v) || std::abs(v) > 1024.0) return false;
  k = static_cast<int>(v);
  return true;
}

template <class V, class Real>
class Evaluator {
 public:
  Evaluator(std::span<const Real> point, std::size_t dim) : point_(point), dim_(dim) {}

  V operator()(const Expr& e) const {
    V r = dispatch(e);
    if (!std::isfinite(static_cast<double>(value_of(r)))) {
      throw DomainError(e.to_string(), "non-finite result");
    }
    return r;
  }

 private:
  V constant(double v) const {
    if constexpr (std::is_same_v<V, Jet2>) {
      return Jet2(dim_, v);
    } else {
      return static_cast<V>(v);
    }
  }

  V dispatch(const Expr& e) const {
    using std::cos, std::cosh, std::exp, std::log, std::sin, std::sinh, std::sqrt, std::tan,
        std::tanh, std::abs, std::pow;
    switch (e.kind()) {
      case Expr::Kind::Number:
        return constant(e.number_value());
      case Expr::Kind::Coordinate: {
        const std::size_t i = e.coordinate_index();
        if (i >= point_.size()) {
          throw Error("coordinate '" + e.coordinate_name() + "' outside evaluation point");
        }
        if constexpr (std::is_same_v<V, Jet2>) {
          return Jet2::variable(dim_, i, point_[i]);
        } else {
          return point_[i];
        }
      }
      case Expr::Kind::Negate:
        return -(*this)(e.operand());
      case Expr::Kind::Binary:
        return binary(e);
      case Expr::Kind::Call: {
        const V u = (*this)(e.operand());
        const auto x = value_of(u);
        switch (e.func()) {
          case Func::Sin: return sin(u);
          case Func::Cos: return cos(u);
          case Func::Tan:
            if (std::cos(static_cast<double>(x)) == 0.0) {
              throw DomainError(e.to_string(), "tan pole");
            }
            return tan(u);
          case Func::Sinh: return sinh(u);
          case Func::Cosh: return cosh(u);
          case Func::Tanh: return tanh(u);
          case Func::Exp: return exp(u);
          case Func::Log:
            if (!(x > 0)) throw DomainError(e.to_string(), "log of non-positive value");
            return log(u);
          case Func::Sqrt:
            if (x < 0) throw DomainError(e.to_string(), "sqrt of negative value");
            if (x == 0 && varies(u)) {
              throw DomainError(e.to_string(), "sqrt is not differentiable at 0");
            }
            return sqrt(u);
          case Func::Abs: return abs(u);
        }
        break;
      }
    }
    throw Error("corrupt expression tree");
  }

  V binary(const Expr& e) const {
    using std::exp, std::log, std::pow;
    switch (e.binary_op()) {
      case BinaryOp::Add: return (*this)(e.lhs()) + (*this)(e.rhs());
      case BinaryOp::Sub: return (*this)(e.lhs()) - (*this)(e.rhs());
      case BinaryOp::Mul: return (*this)(e.lhs()) * (*this)(e.rhs());
      case BinaryOp::Div: {
        const V den = (*this)(e.rhs());
        if (value_of(den) == 0) throw DomainError(e.to_string(), "division by zero");
        return (*this)(e.lhs()) / den;
      }
      case BinaryOp::Pow: {
        const V base = (*this)(e.lhs());
        int k = 0;
        if (integer_exponent(e.rhs(), k)) {
          if (k < 0 && value_of(base) == 0) {
            throw DomainError(e.to_string(), "division by zero");
          }
          if constexpr (std::is_same_v<V, Jet2>) {
            return pow(base, k);
          } else {
            return pow(base, static_cast<V>(k));
          }
        }
        if (!(value_of(base) > 0)) {
          throw DomainError(e.to_string(), "non-integer power of non-positive base");
        }
        const V ex = (*this)(e.rhs());
        return exp(ex * log(base));
      }
    }
    throw Error("corrupt expression tree");
  }

  std::span<const Real> point_;
  std::size_t dim_;
};

}  // namespace

template <class Real>
Real evaluate(const Expr& e, std::span<const Real> point) {
  return Evaluator<Real, Real>(point, point.size())(e);
}

template double evaluate<double>(const Expr&, std::span<const double>);
template long double evaluate<long double>(const Expr&, std::span<const long double>);

Jet2 eval_jet2(const Expr& e, std::span<const double> point) {
  return Evaluator<Jet2, double>(point, point.size())(e);
}

}  // namespace ssmc
