#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qumbral/genocchi.hpp"
#include "support.hpp"

using namespace qumbral;

namespace {

const AuditVerdict& variant(const std::vector<AuditVerdict>& vs, const std::string& id,
                            const std::optional<std::string>& v = std::nullopt) {
  for (const auto& x : vs) {
    if (x.identity == id && x.variant == v) return x;
  }
  FAIL("missing verdict " << id);
  return vs.front();
}

Poly classical_derivative(const Poly& p, int k) { return q_derivative_poly(p, k); }

}  // namespace

TEST_CASE("shifted Genocchi basis on small examples") {
  const Ctx one = QContext::classical();
  const auto geno = make_genocchi(one);
  const auto e1 = to_genocchi_basis(geno, Poly::constant(one, Rational(1)));
  CHECK(e1.offset == 1);
  REQUIRE(e1.coeffs.size() == 1);
  CHECK(e1.coeffs[0] == Rational(1));
  const auto ex = to_genocchi_basis(geno, Poly::monomial(one, 1));
  REQUIRE(ex.coeffs.size() == 2);
  CHECK(ex.coeffs[0] == Rational(1, 2));
  CHECK(ex.coeffs[1] == Rational(1, 2));
}

TEST_CASE("classical shifted expansion matches the Euler-type formula") {
  // p = sum_k (p^(k)(1) + p^(k)(0)) / (2 (k+1)!) G_{k+1}
  const Ctx one = QContext::classical();
  const auto geno = make_genocchi(one);
  std::mt19937_64 rng(59);
  for (int i = 0; i < 20; ++i) {
    const Poly p = testing::random_poly(one, rng, 8);
    const auto e = to_genocchi_basis(geno, p);
    REQUIRE(static_cast<int>(e.coeffs.size()) == p.degree() + 1);
    for (int k = 0; k <= p.degree(); ++k) {
      const Poly d = classical_derivative(p, k);
      const Rational expected = (d.eval(Rational(1)) + d.eval(Rational(0))) / (Rational(2) * one->q_factorial(k + 1));
      CHECK(e.coeffs[static_cast<std::size_t>(k)] == expected);
    }
  }
}

TEST_CASE("basis conversions round trip") {
  std::mt19937_64 rng(61);
  const auto ctxs = testing::grid();
  for (int i = 0; i < 50; ++i) {
    const Ctx& ctx = ctxs[static_cast<std::size_t>(i) % ctxs.size()];
    const auto geno = make_genocchi(ctx);
    const Poly p = testing::random_poly(ctx, rng, 9);
    const auto e = to_genocchi_basis(geno, p);
    CHECK(e.offset == 1);
    CHECK(static_cast<int>(e.coeffs.size()) == p.degree() + 1);
    CHECK(from_genocchi_basis(geno, e) == p);
    CHECK(from_plain_basis(ctx, to_xminus1_basis(p)) == p);
    CHECK(from_plain_basis(ctx, to_monomial_basis(p)) == p);
  }
}

TEST_CASE("powers of x - 1") {
  for (const auto& ctx : testing::grid()) {
    const auto e = to_xminus1_basis(Poly::monomial(ctx, 1));
    REQUIRE(e.coeffs.size() == 2);
    CHECK(e.coeffs[0] == Rational(1));
    CHECK(e.coeffs[1] == Rational(1));
  }
}

TEST_CASE("triangular solve rejects an incomplete basis") {
  const Ctx one = QContext::classical();
  const std::vector<Poly> basis{Poly::constant(one, Rational(1)), Poly::monomial(one, 2)};
  CHECK_THROWS_AS(solve_triangular_basis(Poly::monomial(one, 1), basis), std::invalid_argument);
  const std::vector<Poly> good{Poly::constant(one, Rational(2)), Poly(one, {Rational(1), Rational(1)})};
  const auto c = solve_triangular_basis(Poly(one, {Rational(3), Rational(2)}), good);
  CHECK(combine(one, c, good) == Poly(one, {Rational(3), Rational(2)}));
}

TEST_CASE("closed forms for the pairing with (e_q + 1)/(2t)") {
  const Ctx one = QContext::classical();
  const auto v1 = genint_values(Poly::constant(one, Rational(1)));
  CHECK(v1.pairing == Rational(1, 2));
  CHECK(v1.half_integral == Rational(1, 2));
  CHECK(v1.printed == Rational(1));
  const auto vs = genocchi_pairing_closed_form(Poly::constant(one, Rational(1)));
  CHECK_FALSE(variant(vs, "genint-closed-form", std::string("printed")).verified());
  std::mt19937_64 rng(67);
  for (const auto& ctx : testing::grid()) {
    for (int i = 0; i < 8; ++i) {
      const Poly p = testing::random_poly(ctx, rng, 8);
      const auto values = genint_values(p);
      CHECK(values.pairing == values.half_integral);
      CHECK(variant(genocchi_pairing_closed_form(p), "genint-closed-form", std::string("half-integral")).verified());
    }
  }
}

TEST_CASE("number-level statements") {
  for (const auto& ctx : testing::grid()) {
    const auto vs = audit_number_recurrence(make_genocchi(ctx), 8);
    CHECK(variant(vs, "genocchi-integral-convolution").verified());
    CHECK_FALSE(variant(vs, "genocchi-pairing-with-g", std::string("half-integral")).verified());
    const auto& g0 = variant(vs, "genocchi-g0-claim");
    CHECK_FALSE(g0.verified());
    REQUIRE(g0.counterexample.has_value());
    CHECK(g0.counterexample->lhs == "0");
  }
}

TEST_CASE("statements about powers of x - 1") {
  for (const auto& ctx : testing::grid()) {
    const auto vs = audit_xminus1_expansion(make_genocchi(ctx), 7);
    CHECK(variant(vs, "xm1-pairing").verified());
    CHECK(variant(vs, "xm1-derivative").verified());
    CHECK(variant(vs, "xm1-genocchi-expansion", std::string("exponent-k")).verified());
  }
}

TEST_CASE("second order numbers") {
  const Ctx one = QContext::classical();
  const auto geno = make_genocchi(one);
  const auto g2 = make_genocchi_order(one, 2);
  CHECK(higher_order_numbers(geno, g2, 2) == Rational(2));
  for (const auto& ctx : testing::grid()) {
    const auto g = make_genocchi(ctx);
    for (int m = 2; m <= 3; ++m) {
      const auto gm = make_genocchi_order(ctx, m);
      for (int n = 0; n <= 8; ++n) {
        const auto s = higher_order_number_sides(g, gm, n);
        CHECK(s.series_value == s.multinomial_value);
        if (n < m) CHECK(s.series_value.is_zero());
      }
    }
  }
}

TEST_CASE("order reduction by plain convolution") {
  for (const auto& ctx : testing::grid()) {
    FamilyBook book(ctx);
    for (int m = 2; m <= 3; ++m) {
      for (int n = 0; n <= 6; ++n) {
        CHECK(variant(audit_order_reduction(book, n, m), "genocchi-order-reduction", std::string("plain-convolution"))
                  .verified());
      }
    }
  }
}

TEST_CASE("order-m basis round trip") {
  std::mt19937_64 rng(71);
  for (const auto& ctx : testing::grid()) {
    for (int m = 1; m <= 3; ++m) {
      const auto gm = m == 1 ? make_genocchi(ctx) : make_genocchi_order(ctx, m);
      const Poly p = testing::random_poly(ctx, rng, 7);
      const auto e = expand_in_order_m_basis(gm, p);
      CHECK(e.offset == m);
      CHECK(from_order_m_basis(gm, e) == p);
    }
  }
}

TEST_CASE("two-branch closed form on the zero polynomial") {
  for (const auto& ctx : testing::grid()) {
    FamilyBook book(ctx);
    for (int m = 1; m <= 3; ++m) {
      const auto r = audit_order_m_closed_form(book, 0, m);
      for (const auto& c : r.truth.coeffs) CHECK(c.is_zero());
      CHECK(r.verdicts.size() == 2);
    }
  }
}
