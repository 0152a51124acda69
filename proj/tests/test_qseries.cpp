#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qumbral/series.hpp"
#include "support.hpp"

using namespace qumbral;

namespace {

Series poly_series(const Ctx& ctx, std::vector<Rational> c, int n) { return Series::from_coeffs(ctx, 0, std::move(c), n); }

}  // namespace

TEST_CASE("product of 1+t and 1-t") {
  const Ctx one = QContext::classical();
  const Series a = poly_series(one, {Rational(1), Rational(1)}, 5);
  const Series b = poly_series(one, {Rational(1), Rational(-1)}, 5);
  const Series p = a * b;
  CHECK(p.coeff(0) == Rational(1));
  CHECK(p.coeff(1) == Rational(0));
  CHECK(p.coeff(2) == Rational(-1));
  for (int n = 3; n <= p.truncation(); ++n) CHECK(p.coeff(n).is_zero());
}

TEST_CASE("t times t^-1 is 1") {
  const Ctx half = QContext::make(Rational(1, 2));
  const Series p = Series::monomial(half, 1, Rational(1), 6) * Series::monomial(half, -1, Rational(1), 6);
  CHECK(p.valuation() == 0);
  CHECK(p.stored().size() == 1);
  CHECK(p.coeff(0) == Rational(1));
}

TEST_CASE("inverse of 1-t is the geometric series") {
  const Ctx ctx = QContext::make(Rational(2, 3));
  const Series inv = series_invert(poly_series(ctx, {Rational(1), Rational(-1)}, 8));
  CHECK(inv.truncation() == 8);
  for (int n = 0; n <= 8; ++n) CHECK(inv.coeff(n) == Rational(1));
}

TEST_CASE("inverse of the classical exponential") {
  const Ctx one = QContext::classical();
  const Series inv = series_invert(e_q_series(one, 4));
  CHECK(inv.coeff(0) == Rational(1));
  CHECK(inv.coeff(1) == Rational(-1));
  CHECK(inv.coeff(2) == Rational(1, 2));
  CHECK(inv.coeff(3) == Rational(-1, 6));
  CHECK(inv.coeff(4) == Rational(1, 24));
}

TEST_CASE("q-exponential coefficients") {
  const Series e = e_q_series(QContext::make(Rational(1, 2)), 2);
  CHECK(e.coeff(0) == Rational(1));
  CHECK(e.coeff(1) == Rational(1));
  CHECK(e.coeff(2) == Rational(2, 3));
  CHECK_THROWS_AS(e.coeff(3), TruncationError);
}

TEST_CASE("e_q is fixed by D_q") {
  for (const auto& ctx : testing::grid()) {
    const Series e = e_q_series(ctx, 12);
    const Series d = q_derivative_series(e);
    CHECK(d.truncation() == 11);
    CHECK(d.agrees_with(e));
  }
}

TEST_CASE("argument scaling") {
  const Ctx half = QContext::make(Rational(1, 2));
  const Series e = e_q_series(half, 5);
  const Series s = scale_argument(e, Rational(2));
  for (int n = 0; n <= 5; ++n) CHECK(s.coeff(n) == Rational(2).pow(n) / half->q_factorial(n));
  const Series laurent = Series::from_coeffs(half, -1, {Rational(3), Rational(1)}, 4);
  CHECK(scale_argument(laurent, Rational(1, 3)).coeff(-1) == Rational(9));
  CHECK_THROWS_AS(scale_argument(laurent, Rational(0)), std::domain_error);
  CHECK(scale_argument(e, Rational(0)).coeff(0) == Rational(1));
  CHECK(scale_argument(e, Rational(0)).coeff(3) == Rational(0));
}

TEST_CASE("classification") {
  const Ctx one = QContext::classical();
  const SeriesClass z = classify(Series::zero(one, 4));
  CHECK(z.is_zero);
  CHECK_FALSE(z.valuation.has_value());
  const SeriesClass d = classify(Series::monomial(one, 1, Rational(2), 4));
  CHECK(d.is_delta);
  CHECK_FALSE(d.is_invertible);
  const SeriesClass u = classify(e_q_series(one, 4));
  CHECK(u.is_invertible);
  CHECK(*u.valuation == 0);
  CHECK(*classify(Series::monomial(one, -2, Rational(1), 4)).valuation == -2);
  CHECK(Series::zero(one, 4).valuation() == 5);
}

TEST_CASE("random inverses round trip") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> trunc(0, 16);
  std::uniform_int_distribution<int> val(-3, 3);
  const auto ctxs = testing::grid();
  for (int i = 0; i < 50; ++i) {
    const Ctx& ctx = ctxs[static_cast<std::size_t>(i) % ctxs.size()];
    const int v = val(rng);
    const Series f = testing::random_series(ctx, rng, v + trunc(rng), v);
    const Series g = series_invert(f);
    CHECK(g.valuation() == -v);
    const Series prod = f * g;
    CHECK(prod.agrees_with(Series::monomial(ctx, 0, Rational(1), prod.truncation())));
    CHECK(series_invert(g).agrees_with(f));
  }
  CHECK_THROWS_AS(series_invert(Series::zero(ctxs[0], 3)), std::domain_error);
}

TEST_CASE("ring laws on random series") {
  std::mt19937_64 rng(11);
  for (const auto& ctx : testing::grid()) {
    for (int i = 0; i < 10; ++i) {
      const Series a = testing::random_series(ctx, rng, 9, i % 3);
      const Series b = testing::random_series(ctx, rng, 8, -(i % 2));
      const Series c = testing::random_series(ctx, rng, 10, 0);
      CHECK((a * b).agrees_with(b * a));
      CHECK(((a * b) * c).agrees_with(a * (b * c)));
      CHECK((a * (b + c)).agrees_with(a * b + a * c));
      CHECK((a - a).agrees_with(Series::zero(ctx, 9)));
      CHECK((a * b).valuation() == a.valuation() + b.valuation());
    }
  }
}

TEST_CASE("q-Leibniz rule D_q(fg) = D_q f g + f(qt) D_q g") {
  std::mt19937_64 rng(13);
  for (const auto& ctx : testing::grid()) {
    for (int i = 0; i < 8; ++i) {
      const Series f = testing::random_series(ctx, rng, 10, 0);
      const Series g = testing::random_series(ctx, rng, 10, 0);
      const Series lhs = q_derivative_series(f * g);
      const Series rhs = q_derivative_series(f) * g + scale_argument(f, ctx->q()) * q_derivative_series(g);
      CHECK(lhs.agrees_with(rhs));
    }
  }
}

TEST_CASE("power matches repeated products") {
  std::mt19937_64 rng(17);
  const Ctx ctx = QContext::make(Rational(1, 3));
  const Series f = testing::random_series(ctx, rng, 8, 1);
  CHECK(series_pow(f, 3).agrees_with(f * f * f));
  CHECK(series_pow(f, 3).valuation() == 3);
  CHECK(series_pow(f, 0).coeff(0) == Rational(1));
}

TEST_CASE("truncation is never extended") {
  const Ctx one = QContext::classical();
  const Series f = e_q_series(one, 3);
  CHECK_THROWS_AS(f.coeff(4), TruncationError);
  CHECK_THROWS_AS(f.truncated(5), TruncationError);
  CHECK(f.truncated(2).truncation() == 2);
  CHECK(f.shifted(2).truncation() == 5);
  CHECK(f.shifted(2).coeff(3) == Rational(1));
}

TEST_CASE("mixing q values is rejected") {
  const Series a = e_q_series(QContext::make(Rational(1, 2)), 3);
  const Series b = e_q_series(QContext::make(Rational(1, 3)), 3);
  CHECK_THROWS_AS(a + b, ContextMismatch);
  CHECK_THROWS_AS(a * b, ContextMismatch);
}
