#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ssmc/jet.hpp"

namespace ssmc {

enum class Func { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt, Abs };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

std::string_view func_name(Func f) noexcept;

struct ExprNode;

/// Immutable arithmetic expression over the coordinates of a chart.
/// Copies share the node tree; concurrent evaluation is safe.
class Expr {
 public:
  enum class Kind { Number, Coordinate, Negate, Binary, Call };

  Expr();  // the literal 0

  static Expr number(double value);
  static Expr coordinate(std::size_t index, std::string name);
  static Expr negate(Expr operand);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
  static Expr call(Func f, Expr argument);

  Kind kind() const noexcept;
  /// True when no coordinate occurs in the tree.
  bool is_constant() const noexcept;

  // Accessors; each is valid only for the matching kind.
  double number_value() const;
  std::size_t coordinate_index() const;
  const std::string& coordinate_name() const;
  BinaryOp binary_op() const;
  Func func() const;
  const Expr& operand() const;  // Negate, Call
  const Expr& lhs() const;
  const Expr& rhs() const;

  /// Fully parenthesised text that parses back to an equivalent tree.
  std::string to_string() const;

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;
};

/// Parses `text` with coordinates `coords`. Grammar, tightest first:
/// `^` (right-assoc), unary `-`, `* /`, `+ -` (left-assoc); calls take one
/// argument. Throws ParseError carrying a byte offset.
Expr parse(std::string_view text, std::span<const std::string> coords);

/// Value of `e` at `point`. Instantiated for double and long double.
template <class Real>
Real evaluate(const Expr& e, std::span<const Real> point);

extern template double evaluate<double>(const Expr&, std::span<const double>);
extern template long double evaluate<long double>(const Expr&,
                                                  std::span<const long double>);

/// Value, gradient and Hessian of `e` at `point`. Throws DomainError.
Jet2 eval_jet2(const Expr& e, std::span<const double> point);

}  // namespace ssmc
