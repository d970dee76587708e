#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "ssmc/errors.hpp"
#include "ssmc/expr.hpp"
#include "support.hpp"

using namespace ssmc;
using ssmc::test::ex;

namespace {

double val(const std::string& s, std::vector<double> p = {0.3, -0.4, 0.7, 1.1}) {
  return evaluate<double>(ex(s), p);
}

ParseError parse_error(const std::string& s) {
  try {
    ex(s);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for " << s;
  return ParseError(ParseError::Kind::Syntax, 0, "");
}

}  // namespace

TEST(Parse, CallOfProduct) {
  const Expr e = ex("exp(2*t)");
  ASSERT_EQ(e.kind(), Expr::Kind::Call);
  EXPECT_EQ(e.func(), Func::Exp);
  ASSERT_EQ(e.operand().kind(), Expr::Kind::Binary);
  EXPECT_EQ(e.operand().binary_op(), BinaryOp::Mul);
  EXPECT_EQ(e.operand().rhs().coordinate_name(), "t");
}

TEST(Parse, PowerBindsTighterThanUnaryMinus) {
  const std::vector<std::string> x{"x"};
  const Expr e = parse("-x^2", x);
  ASSERT_EQ(e.kind(), Expr::Kind::Negate);
  EXPECT_EQ(e.operand().binary_op(), BinaryOp::Pow);
  const std::vector<double> p{3.0};
  EXPECT_DOUBLE_EQ(evaluate<double>(e, p), -9.0);
}

TEST(Parse, AssociativityAndPrecedence) {
  EXPECT_DOUBLE_EQ(val("2^3^2"), 512.0);
  EXPECT_DOUBLE_EQ(val("8-3-2"), 3.0);
  EXPECT_DOUBLE_EQ(val("8/4/2"), 1.0);
  EXPECT_DOUBLE_EQ(val("1+2*3"), 7.0);
  EXPECT_DOUBLE_EQ(val("2^-1"), 0.5);
  EXPECT_DOUBLE_EQ(val("-(1+2)*3"), -9.0);
  EXPECT_DOUBLE_EQ(val("1.5e2"), 150.0);
  EXPECT_DOUBLE_EQ(val("t*x"), 0.3 * -0.4);
}

TEST(Parse, Errors) {
  const ParseError star = parse_error("2**3");
  EXPECT_EQ(star.kind(), ParseError::Kind::Syntax);
  EXPECT_EQ(star.offset(), 2u);

  const ParseError unknown = parse_error("x + w");
  EXPECT_EQ(unknown.kind(), ParseError::Kind::UnknownIdentifier);
  EXPECT_EQ(unknown.offset(), 4u);

  EXPECT_EQ(parse_error("foo(1)").kind(), ParseError::Kind::UnknownIdentifier);
  EXPECT_EQ(parse_error("sin()").kind(), ParseError::Kind::Arity);
  EXPECT_EQ(parse_error("sin(1, 2)").kind(), ParseError::Kind::Arity);
  EXPECT_EQ(parse_error("").kind(), ParseError::Kind::Syntax);
  EXPECT_EQ(parse_error("(t").kind(), ParseError::Kind::Syntax);
  EXPECT_EQ(parse_error("t x").kind(), ParseError::Kind::Syntax);
  EXPECT_EQ(parse_error("sin").kind(), ParseError::Kind::Syntax);
}

TEST(Evaluate, DomainErrorsNameTheSubexpression) {
  const std::vector<double> p{0.0, -1.0, 0.0, 0.0};
  for (const char* s : {"log(t)", "sqrt(x)", "1/t", "x^0.5", "t^-1", "log(x)"}) {
    EXPECT_THROW(evaluate<double>(ex(s), p), DomainError) << s;
    EXPECT_THROW(eval_jet2(ex(s), p), DomainError) << s;
  }
  try {
    evaluate<double>(ex("1 + log(x)"), p);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(e.subexpression().find("log"), std::string::npos);
  }
}

TEST(Evaluate, LongDoubleMatchesDouble) {
  const std::vector<double> p{0.3, -0.4, 0.7, 1.1};
  const std::vector<long double> pl(p.begin(), p.end());
  for (const char* s : {"exp(2*t)*sin(x)", "sqrt(1+x^2)/cosh(y)", "tanh(z)^3 - log(2+t)"}) {
    EXPECT_NEAR(static_cast<double>(evaluate<long double>(ex(s), pl)), evaluate<double>(ex(s), p),
                1e-15);
  }
}

TEST(Jet2, SpecExamples) {
  const std::vector<std::string> tx{"t", "x"};
  const std::vector<double> p{2.0, 3.0};
  const Jet2 j = eval_jet2(parse("t*x", tx), p);
  EXPECT_EQ(j.value(), 6.0);
  EXPECT_EQ(j.grad(0), 3.0);
  EXPECT_EQ(j.grad(1), 2.0);
  EXPECT_EQ(j.hess(0, 0), 0.0);
  EXPECT_EQ(j.hess(0, 1), 1.0);
  EXPECT_EQ(j.hess(1, 1), 0.0);

  const std::vector<std::string> t{"t"};
  const std::vector<double> zero{0.0};
  const Jet2 e = eval_jet2(parse("exp(t)", t), zero);
  EXPECT_EQ(e.value(), 1.0);
  EXPECT_EQ(e.grad(0), 1.0);
  EXPECT_EQ(e.hess(0, 0), 1.0);

  const Jet2 s = eval_jet2(parse("sin(t)", t), zero);
  EXPECT_EQ(s.value(), 0.0);
  EXPECT_EQ(s.grad(0), 1.0);
  EXPECT_EQ(s.hess(0, 0), 0.0);
}

TEST(Jet2, IntegerPowersAtZero) {
  const std::vector<std::string> t{"t"};
  const std::vector<double> zero{0.0};
  const Jet2 a = eval_jet2(parse("t^1", t), zero);
  EXPECT_EQ(a.grad(0), 1.0);
  const Jet2 b = eval_jet2(parse("t^2", t), zero);
  EXPECT_EQ(b.hess(0, 0), 2.0);
  const Jet2 c = eval_jet2(parse("t^0", t), zero);
  EXPECT_EQ(c.value(), 1.0);
}

// Derivatives against central differences of the long-double value.
TEST(Jet2, MatchesFiniteDifferences) {
  const std::vector<std::string> exprs{
      "exp(2*t)*(1+x^2)",        "sin(t*x) + cos(y)*z^3", "sqrt(2 + x^2 + y^2)",
      "log(3 + t) / (1 + z^2)",  "tanh(x - y)*sinh(z)",   "(1.5 + sin(t))^x",
      "abs(x) + tan(0.3*y)",      "cosh(t)^-2 * x*y*z"};
  const auto pts = ssmc::test::random_points(10, 4, -0.9, 0.9, 42);
  for (const auto& s : exprs) {
    const Expr e = ex(s);
    for (const auto& p : pts) {
      if (s.starts_with("abs") && std::abs(p[1]) < 1e-3) continue;
      const Jet2 j = eval_jet2(e, p);
      auto f = [&](std::vector<long double> q) { return evaluate<long double>(e, q); };
      std::vector<long double> q(p.begin(), p.end());
      EXPECT_DOUBLE_EQ(j.value(), evaluate<double>(e, p));
      for (std::size_t i = 0; i < 4; ++i) {
        const long double h = 1e-5L;
        auto qp = q, qm = q;
        qp[i] += h;
        qm[i] -= h;
        const double fd = static_cast<double>((f(qp) - f(qm)) / (2 * h));
        EXPECT_LE(std::abs(j.grad(i) - fd), 1e-6 * (1 + std::abs(j.grad(i)))) << s;
        for (std::size_t k = 0; k < 4; ++k) {
          const long double H = 1e-4L;
          auto a = q, b = q, c = q, d = q;
          a[i] += H; a[k] += H;
          b[i] += H; b[k] -= H;
          c[i] -= H; c[k] += H;
          d[i] -= H; d[k] -= H;
          const double fd2 = static_cast<double>((f(a) - f(b) - f(c) + f(d)) / (4 * H * H));
          EXPECT_LE(std::abs(j.hess(i, k) - fd2), 1e-6 * (1 + std::abs(j.hess(i, k)))) << s;
          EXPECT_EQ(j.hess(i, k), j.hess(k, i));
        }
      }
    }
  }
}

// parse(to_string(e)) evaluates identically on random expression trees.
TEST(Expr, PrintParseRoundTrip) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(0, 9);
  std::uniform_real_distribution<double> num(0.1, 3.0);
  const auto& coords = ssmc::test::txyz();
  std::function<Expr(int)> gen = [&](int depth) -> Expr {
    const int k = depth == 0 ? pick(rng) % 2 : pick(rng);
    switch (k) {
      case 0: return Expr::number(num(rng));
      case 1: {
        const std::size_t c = static_cast<std::size_t>(pick(rng) % 4);
        return Expr::coordinate(c, coords[c]);
      }
      case 2: return Expr::negate(gen(depth - 1));
      case 3: return Expr::binary(BinaryOp::Add, gen(depth - 1), gen(depth - 1));
      case 4: return Expr::binary(BinaryOp::Sub, gen(depth - 1), gen(depth - 1));
      case 5: return Expr::binary(BinaryOp::Mul, gen(depth - 1), gen(depth - 1));
      case 6: return Expr::binary(BinaryOp::Pow, gen(depth - 1), Expr::number(2.0));
      case 7: return Expr::call(Func::Sin, gen(depth - 1));
      case 8: return Expr::call(Func::Exp, Expr::call(Func::Cos, gen(depth - 1)));
      default: return Expr::negate(Expr::number(num(rng)));
    }
  };
  const std::vector<double> p{0.3, -0.4, 0.7, 1.1};
  for (int i = 0; i < 200; ++i) {
    const Expr e = gen(4);
    const Expr back = parse(e.to_string(), coords);
    EXPECT_EQ(evaluate<double>(back, p), evaluate<double>(e, p)) << e.to_string();
  }
}

TEST(Expr, IsConstant) {
  EXPECT_TRUE(ex("2*exp(1)").is_constant());
  EXPECT_FALSE(ex("2*exp(t)").is_constant());
}
