#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thread>

#include "qumbral/qcontext.hpp"
#include "support.hpp"

using namespace qumbral;

TEST_CASE("rational parsing and canonical text") {
  CHECK(Rational::parse("6/4").to_string() == "3/2");
  CHECK(Rational::parse("-7").to_string() == "-7");
  CHECK(Rational::parse("0").to_string() == "0");
  CHECK(Rational::parse("-2/4").to_string() == "-1/2");
  CHECK(Rational(4, -6).to_string() == "-2/3");
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational arithmetic is exact") {
  const Rational a(1, 3);
  const Rational b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a * b == Rational(1, 18));
  CHECK(a - b == b);
  CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
  CHECK(Rational(-3, 5).inverse() == Rational(-5, 3));
  CHECK(Rational(1, 3) < Rational(1, 2));
  const Rational big = Rational(10).pow(40) + Rational(1, 3);
  CHECK(big - Rational(10).pow(40) == Rational(1, 3));
}

TEST_CASE("q-numbers") {
  const Ctx half = QContext::make(Rational(1, 2));
  const Ctx one = QContext::classical();
  CHECK(half->q_number(2) == Rational(3, 2));
  CHECK(one->q_number(5) == Rational(5));
  CHECK(half->q_number(0) == Rational(0));
  CHECK(one->q_number(0) == Rational(0));
  // (1 - q^{-1})/(1 - q) = -1/q
  CHECK(half->q_number(-1) == Rational(-2));
  CHECK(one->q_number(-3) == Rational(-3));
}

TEST_CASE("[a+1] = 1 + q [a] on the grid") {
  for (const auto& ctx : testing::grid()) {
    for (long a = -12; a <= 12; ++a) {
      CHECK(ctx->q_number(a + 1) == Rational(1) + ctx->q() * ctx->q_number(a));
    }
  }
}

TEST_CASE("q-factorials against a direct product") {
  const Ctx half = QContext::make(Rational(1, 2));
  CHECK(half->q_factorial(0) == Rational(1));
  CHECK(half->q_factorial(3) == Rational(21, 8));
  CHECK(QContext::classical()->q_factorial(4) == Rational(24));
  for (const auto& ctx : testing::grid()) {
    for (int n = 0; n <= 15; ++n) CHECK(ctx->q_factorial(n) == testing::factorial_by_product(ctx->q(), n));
  }
}

TEST_CASE("q double factorial") {
  CHECK(QContext::classical()->q_double_factorial(0) == Rational(1));
  CHECK(QContext::classical()->q_double_factorial(3) == Rational(48));
  CHECK(QContext::make(Rational(1, 2))->q_double_factorial(1) == Rational(3, 2));
}

TEST_CASE("q-binomial coefficients") {
  const Ctx one = QContext::classical();
  const Ctx half = QContext::make(Rational(1, 2));
  CHECK(half->q_binomial(7, 0) == Rational(1));
  CHECK(one->q_binomial(4, 2) == Rational(6));
  CHECK(half->q_binomial(2, 1) == Rational(3, 2));
  CHECK(half->q_binomial(3, -1) == Rational(0));
  CHECK(half->q_binomial(3, 4) == Rational(0));
}

TEST_CASE("q-Pascal rule for n <= 20") {
  for (const auto& ctx : testing::grid()) {
    for (int n = 1; n <= 20; ++n) {
      for (int k = 0; k <= n; ++k) {
        CHECK(ctx->q_binomial(n, k) ==
              ctx->q_binomial(n - 1, k - 1) + ctx->q_power(k) * ctx->q_binomial(n - 1, k));
      }
    }
  }
}

TEST_CASE("classical limit reproduces Pascal's triangle") {
  const Ctx one = QContext::classical();
  std::vector<long> row{1};
  for (int n = 1; n <= 20; ++n) {
    std::vector<long> next(static_cast<std::size_t>(n + 1), 1);
    for (int k = 1; k < n; ++k) next[k] = row[k - 1] + row[k];
    row = next;
    for (int k = 0; k <= n; ++k) CHECK(one->q_binomial(n, k) == Rational(row[k]));
  }
}

TEST_CASE("q-multinomial") {
  const Ctx one = QContext::classical();
  const Ctx half = QContext::make(Rational(1, 2));
  const std::vector<int> single{5};
  const std::vector<int> ones{1, 1, 1};
  const std::vector<int> pair{1, 1};
  const std::vector<int> bad{1, 1};
  CHECK(half->q_multinomial(5, single) == Rational(1));
  CHECK(one->q_multinomial(3, ones) == Rational(6));
  CHECK(half->q_multinomial(2, pair) == half->q_binomial(2, 1));
  CHECK_THROWS(half->q_multinomial(3, bad));
}

TEST_CASE("q-shifted factorial") {
  const Ctx half = QContext::make(Rational(1, 2));
  CHECK(half->q_shifted_factorial(Rational(5), 0) == Rational(1));
  CHECK(half->q_shifted_factorial(Rational(1), 3) == Rational(0));
  CHECK(half->q_shifted_factorial(Rational(1, 2), 2) == Rational(3, 8));
  CHECK_THROWS_AS(half->q_shifted_factorial(Rational(1, 2), kInfiniteLength), UnsupportedOperation);
}

TEST_CASE("contexts reject q outside (0, 1]") {
  CHECK_THROWS_AS(QContext::make(Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(QContext::make(Rational(3, 2)), std::invalid_argument);
  CHECK_THROWS_AS(QContext::make(Rational(-1, 2)), std::invalid_argument);
  CHECK(QContext::parse("1")->is_classical());
  CHECK_FALSE(QContext::parse("9/10")->is_classical());
}

TEST_CASE("memo tables agree with fresh computation under concurrent readers") {
  const Ctx shared = QContext::make(Rational(2, 3));
  std::vector<std::thread> pool;
  std::vector<int> mismatches(4, 0);
  for (int t = 0; t < 4; ++t) {
    pool.emplace_back([&, t] {
      for (int n = 30; n >= 0; --n) {
        for (int k = 0; k <= n; ++k) {
          const Rational expected = testing::factorial_by_product(Rational(2, 3), n) /
                                    (testing::factorial_by_product(Rational(2, 3), k) *
                                     testing::factorial_by_product(Rational(2, 3), n - k));
          if (shared->q_binomial(n, k) != expected) ++mismatches[t];
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (int m : mismatches) CHECK(m == 0);
}
