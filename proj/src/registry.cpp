#include "qumbral/registry.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "qumbral/genocchi.hpp"
#include "qumbral/umbral.hpp"

namespace qumbral {

std::vector<Rational> AuditConfig::default_q_grid() {
  return {Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(9, 10), Rational(1)};
}

Workspace::Workspace(const std::vector<Rational>& q_grid) {
  for (const auto& q : q_grid) {
    if (!books_.count(q)) books_.emplace(q, std::make_unique<FamilyBook>(QContext::make(q)));
  }
}

FamilyBook& Workspace::book(const Rational& q) {
  auto it = books_.find(q);
  if (it == books_.end()) throw std::invalid_argument("q = " + q.to_string() + " is not in the workspace grid");
  return *it->second;
}

bool IdentityReport::stable() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const AuditVerdict& v) { return v.stable(); });
}

namespace {

using Verdicts = std::vector<AuditVerdict>;

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 5);
  return Rational(num(rng), den(rng));
}

Rational random_nonzero(std::mt19937_64& rng) {
  Rational r = random_rational(rng);
  while (r.is_zero()) r = random_rational(rng);
  return r;
}

Poly random_poly(const Ctx& ctx, std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  const int d = deg(rng);
  std::vector<Rational> c;
  for (int i = 0; i < d; ++i) c.push_back(random_rational(rng));
  c.push_back(random_nonzero(rng));
  return Poly(ctx, std::move(c));
}

Series random_series(const Ctx& ctx, std::mt19937_64& rng, int truncation, int valuation = 0) {
  std::vector<Rational> c;
  c.push_back(random_nonzero(rng));
  for (int i = valuation + 1; i <= truncation; ++i) c.push_back(random_rational(rng));
  return Series::from_coeffs(ctx, valuation, std::move(c), truncation);
}

Series unit(const Ctx& ctx, int truncation) { return Series::monomial(ctx, 0, Rational(1), truncation); }

Poly x_power(const Ctx& ctx, int n) { return Poly::monomial(ctx, n); }

std::string fam_detail(const AppellFamily& fam) { return "family=" + fam.name(); }

/// Verdicts of `vs` with the given identity, or all of them relabelled to it.
Verdicts relabel(const std::string& id, std::optional<std::string> variant, const Verdicts& vs) {
  VerdictBuilder b(id, std::move(variant));
  for (const auto& v : vs) b.absorb(v);
  return {b.finish()};
}

Verdicts select(const std::string& id, const Verdicts& vs) {
  Verdicts out;
  for (const auto& v : vs) {
    if (v.identity == id) out.push_back(v);
  }
  return out;
}

std::vector<AppellFamily> all_families(AuditScope& s) {
  std::vector<AppellFamily> out{s.book.get("bernoulli"), s.book.get("euler"), s.book.get("genocchi")};
  for (int m = 2; m <= s.cfg.mmax; ++m) out.push_back(s.book.genocchi_order(m));
  return out;
}

std::vector<AppellFamily> invertible_families(AuditScope& s) { return {s.book.get("bernoulli"), s.book.get("euler")}; }

std::optional<int> order_of(const AppellFamily& fam) {
  if (fam.det_valuation() >= 1) return fam.det_valuation();
  return std::nullopt;
}

// ---- scalars, series and polynomials ----

Verdicts q_binomial_formula(AuditScope& s) {
  const QContext& ctx = *s.ctx;
  VerdictBuilder b("q-binomial-formula");
  for (int n = 0; n <= s.cfg.nmax; ++n) {
    const Rational a = random_rational(s.rng);
    Rational lhs(0);
    for (int k = 0; k <= n; ++k) {
      lhs += ctx.q_binomial(n, k) * ctx.q_power(static_cast<long>(k) * (k - 1) / 2) *
             Rational(k % 2 == 0 ? 1 : -1) * a.pow(k);
    }
    b.compare(ctx.q(), n, std::nullopt, lhs, ctx.q_shifted_factorial(a, n), "a=" + a.to_string());
  }
  return {b.finish()};
}

Verdicts eq_fixed_point(AuditScope& s) {
  VerdictBuilder b("eq-qderivative-fixed-point");
  for (int n = 1; n <= s.cfg.truncation(); ++n) {
    const Series d = q_derivative_series(e_q_series(s.ctx, n));
    const Series e = e_q_series(s.ctx, n - 1);
    b.record(s.ctx->q(), n, std::nullopt, d.agrees_with(e), d.to_string(), e.to_string());
  }
  return {b.finish()};
}

Verdicts jackson_ftc(AuditScope& s) {
  VerdictBuilder b("jackson-ftc");
  const Rational& q = s.ctx->q();
  for (int i = 0; i < s.cfg.instances; ++i) {
    const Poly p = random_poly(s.ctx, s.rng, 8);
    const Poly back = q_derivative_poly(jackson_antiderivative(p));
    b.record(q, p.degree(), std::nullopt, back == p, back.to_string(), p.to_string(), "D int p, p=" + p.to_string());
    const Rational a = random_rational(s.rng);
    const Rational c = random_rational(s.rng);
    const Rational split = jackson_integral(p, Rational(0), c) - jackson_integral(p, Rational(0), a);
    b.compare(q, p.degree(), std::nullopt, jackson_integral(p, a, c), split,
              "int_a^b, a=" + a.to_string() + " b=" + c.to_string());
  }
  return {b.finish()};
}

Verdicts power_rule(AuditScope& s) {
  const QContext& ctx = *s.ctx;
  VerdictBuilder printed("qderivative-power-rule", std::string("printed"));
  VerdictBuilder corrected("qderivative-power-rule", std::string("falling-factorial"));
  for (int n = 0; n <= s.cfg.nmax; ++n) {
    const Poly xn = x_power(s.ctx, n);
    for (int k = 0; k <= s.cfg.nmax; ++k) {
      const Poly lhs = q_derivative_poly(xn, k);
      Poly rhs_p(s.ctx);
      Poly rhs_c(s.ctx);
      if (k <= n) {
        rhs_p = Poly::monomial(s.ctx, n - k, ctx.q_factorial(n) / ctx.q_factorial(k));
        rhs_c = Poly::monomial(s.ctx, n - k, ctx.q_factorial(n) / ctx.q_factorial(n - k));
      }
      const std::string detail = "k=" + std::to_string(k);
      printed.record(ctx.q(), n, std::nullopt, lhs == rhs_p, lhs.to_string(), rhs_p.to_string(), detail);
      corrected.record(ctx.q(), n, std::nullopt, lhs == rhs_c, lhs.to_string(), rhs_c.to_string(), detail);
    }
  }
  return {printed.finish(), corrected.finish()};
}

// ---- umbral algebra ----

Verdicts eq_particular(AuditScope& s) {
  const QContext& ctx = *s.ctx;
  VerdictBuilder b("eq-particular");
  for (int n = 0; n <= s.cfg.nmax; ++n) {
    for (int k = 0; k <= s.cfg.nmax; ++k) {
      const Functional tk(Series::monomial(s.ctx, k, Rational(1), std::max(n, k)));
      b.compare(ctx.q(), n, std::nullopt, apply(tk, x_power(s.ctx, n)), n == k ? ctx.q_factorial(n) : Rational(0),
                "k=" + std::to_string(k));
    }
  }
  return {b.finish()};
}

Verdicts eval_functional(AuditScope& s) {
  VerdictBuilder b("eval-functional");
  const Rational& q = s.ctx->q();
  for (int i = 0; i < s.cfg.instances; ++i) {
    const Poly p = random_poly(s.ctx, s.rng, 8);
    const Rational y = random_rational(s.rng);
    const int deg = p.degree();
    const Series ey = scale_argument(e_q_series(s.ctx, deg), y);
    const std::string detail = "y=" + y.to_string() + " p=" + p.to_string();
    const Rational py = p.eval(y);
    const Rational p0 = p.eval(Rational(0));
    b.compare(q, deg, std::nullopt, apply(Functional(ey), p), py, detail);
    b.compare(q, deg, std::nullopt, apply(Functional(ey + unit(s.ctx, deg)), p), py + p0, "plus one, " + detail);
    b.compare(q, deg, std::nullopt, apply(Functional(ey - unit(s.ctx, deg)), p), py - p0, "minus one, " + detail);
  }
  return {b.finish()};
}

Verdicts expansion_f(AuditScope& s) {
  VerdictBuilder b("functional-expansion");
  const int n = s.cfg.truncation();
  for (int i = 0; i < s.cfg.instances; ++i) {
    const Series f = i == 0 ? e_q_series(s.ctx, n) : random_series(s.ctx, s.rng, n);
    const Series back = expand_functional(Functional(f), n);
    b.record(s.ctx->q(), n, std::nullopt, back.agrees_with(f), back.to_string(), f.to_string());
  }
  return {b.finish()};
}

Verdicts expansion_p(AuditScope& s) {
  VerdictBuilder b("polynomial-expansion");
  for (int i = 0; i < s.cfg.instances; ++i) {
    const Poly p = random_poly(s.ctx, s.rng, 10);
    const Poly back = expand_polynomial(p);
    b.record(s.ctx->q(), p.degree(), std::nullopt, back == p, back.to_string(), p.to_string());
  }
  return {b.finish()};
}

Verdicts operator_expansion(AuditScope& s) {
  const QContext& ctx = *s.ctx;
  VerdictBuilder b("operator-expansion");
  for (int i = 0; i < s.cfg.instances; ++i) {
    const Functional f(random_series(s.ctx, s.rng, s.cfg.nmax));
    std::uniform_int_distribution<int> pick(0, s.cfg.nmax);
    const int n = pick(s.rng);
    const Poly lhs = operator_apply(f, x_power(s.ctx, n));
    Poly rhs(s.ctx);
    for (int k = 0; k <= n; ++k) {
      rhs = rhs + Poly::monomial(s.ctx, n - k, ctx.q_binomial(n, k) * apply(f, x_power(s.ctx, k)));
    }
    b.record(ctx.q(), n, std::nullopt, lhs == rhs, lhs.to_string(), rhs.to_string());
  }
  return {b.finish()};
}

Verdicts operator_derivative(AuditScope& s) {
  VerdictBuilder b("operator-derivative");
  const Rational& q = s.ctx->q();
  for (int i = 0; i < s.cfg.instances; ++i) {
    const Poly p = random_poly(s.ctx, s.rng, 8);
    for (int k = 0; k <= p.degree() + 1; ++k) {
      const Series tk = Series::monomial(s.ctx, k, Rational(1), std::max(k, p.degree()));
      const Poly dk = q_derivative_poly(p, k);
      const Poly op = operator_apply(Functional(tk), p);
      const std::string detail = "k=" + std::to_string(k) + " p=" + p.to_string();
      b.record(q, p.degree(), std::nullopt, op == dk, op.to_string(), dk.to_string(), "operator, " + detail);
      const Rational at0 = dk.eval(Rational(0));
      b.compare(q, p.degree(), std::nullopt, at0, apply(Functional(tk), p), "<t^k|p>, " + detail);
      b.compare(q, p.degree(), std::nullopt, at0, apply(Functional(unit(s.ctx, std::max(dk.degree(), 0))), dk),
                "<1|p^(k)>, " + detail);
    }
  }
  return {b.finish()};
}

Verdicts pairing_adjoint(AuditScope& s) {
  VerdictBuilder plain("pairing-adjoint", std::string("power-series"));
  VerdictBuilder laurent("pairing-adjoint", std::string("laurent"));
  const Rational& q = s.ctx->q();
  const int n = s.cfg.truncation();
  for (int i = 0; i < s.cfg.instances; ++i) {
    const Poly p = random_poly(s.ctx, s.rng, 8);
    const Functional f(random_series(s.ctx, s.rng, n));
    const Functional g(random_series(s.ctx, s.rng, n));
    const auto [l1, r1] = adjoint_sides(f, g, p);
    plain.compare(q, p.degree(), std::nullopt, l1, r1, "p=" + p.to_string());
    const auto [l2, r2] = adjoint_sides(f, genocchi_g(s.ctx, n), p);
    laurent.compare(q, p.degree(), std::nullopt, l2, r2, "g=(e_q+1)/(2t), p=" + p.to_string());
  }
  return {plain.finish(), laurent.finish()};
}

Verdicts pairing_convolution(AuditScope& s) {
  VerdictBuilder b("pairing-convolution");
  std::uniform_int_distribution<int> pick(0, s.cfg.nmax);
  for (int i = 0; i < s.cfg.instances; ++i) {
    const Functional f(random_series(s.ctx, s.rng, s.cfg.nmax));
    const Functional g(random_series(s.ctx, s.rng, s.cfg.nmax));
    const int n = pick(s.rng);
    const auto [l, r] = pairing_convolution_sides(f, g, n);
    b.compare(s.ctx->q(), n, std::nullopt, l, r);
  }
  return {b.finish()};
}

Verdicts pairing_multinomial(AuditScope& s) {
  VerdictBuilder b("pairing-multinomial");
  std::uniform_int_distribution<int> pick_n(0, 6);
  std::uniform_int_distribution<int> pick_k(1, 4);
  for (int i = 0; i < s.cfg.instances; ++i) {
    const int n = pick_n(s.rng);
    const int k = pick_k(s.rng);
    std::vector<Functional> fs;
    for (int j = 0; j < k; ++j) fs.emplace_back(random_series(s.ctx, s.rng, n));
    const auto [l, r] = pairing_multinomial_sides(fs, n);
    b.compare(s.ctx->q(), n, std::nullopt, l, r, "factors=" + std::to_string(k));
  }
  {
    // three copies of the Genocchi determining series
    const AppellFamily gen = s.book.get("genocchi");
    for (int n = 0; n <= std::min(s.cfg.nmax, 8); ++n) {
      const std::vector<Functional> fs(3, Functional(gen.det_series(n)));
      const auto [l, r] = pairing_multinomial_sides(fs, n);
      b.compare(s.ctx->q(), n, std::nullopt, l, r, "factors=3 x 2t/(e_q+1)");
    }
  }
  return {b.finish()};
}

// ---- q-Appell families ----

Verdicts appell_generating(AuditScope& s) {
  VerdictBuilder b("appell-generating");
  const int n = s.cfg.nmax;
  for (const auto& fam : all_families(s)) {
    for (int i = 0; i < 3; ++i) {
      const Rational x0 = random_rational(s.rng);
      std::vector<Rational> c;
      for (int k = 0; k <= n; ++k) c.push_back(fam.polynomial(k).eval(x0) / s.ctx->q_factorial(k));
      const Series lhs = Series::from_coeffs(s.ctx, 0, std::move(c), n);
      const Series rhs = (fam.det_series(n) * scale_argument(e_q_series(s.ctx, n), x0)).truncated(n);
      b.record(s.ctx->q(), n, order_of(fam), lhs.agrees_with(rhs), lhs.to_string(), rhs.to_string(),
               fam_detail(fam) + " x=" + x0.to_string());
    }
  }
  return {b.finish()};
}

Verdicts appell_numbers(AuditScope& s) {
  VerdictBuilder b("appell-numbers-at-zero");
  for (const auto& fam : all_families(s)) {
    for (int n = 0; n <= s.cfg.nmax; ++n) {
      b.compare(s.ctx->q(), n, order_of(fam), fam.polynomial(n).eval(Rational(0)), fam.number(n), fam_detail(fam));
    }
  }
  return {b.finish()};
}

Verdicts appell_derivative(AuditScope& s) {
  Verdicts vs;
  for (const auto& fam : all_families(s)) {
    for (int n = 1; n <= s.cfg.nmax; ++n) vs.push_back(check_derivative_property(fam, n));
  }
  return relabel("appell-derivative", std::nullopt, vs);
}

Verdicts appell_binomial_form(AuditScope& s) {
  const QContext& ctx = *s.ctx;
  VerdictBuilder b("appell-binomial-form");
  for (const auto& fam : all_families(s)) {
    for (int n = 0; n <= s.cfg.nmax; ++n) {
      const Functional a(fam.det_series(n));
      Poly rhs(s.ctx);
      for (int k = 0; k <= n; ++k) {
        rhs = rhs + Poly::monomial(s.ctx, k, ctx.q_binomial(n, k) * apply(a, x_power(s.ctx, n - k)));
      }
      const Poly lhs = fam.polynomial(n);
      b.record(ctx.q(), n, order_of(fam), lhs == rhs, lhs.to_string(), rhs.to_string(), fam_detail(fam));
    }
  }
  return {b.finish()};
}

Verdicts appell_operator_form(AuditScope& s) {
  VerdictBuilder b("appell-operator-form");
  for (const auto& fam : all_families(s)) {
    for (int n = 0; n <= s.cfg.nmax; ++n) {
      const Poly lhs = fam.polynomial(n);
      const Poly rhs = operator_apply(Functional(fam.det_series(n)), x_power(s.ctx, n));
      b.record(s.ctx->q(), n, order_of(fam), lhs == rhs, lhs.to_string(), rhs.to_string(), fam_detail(fam));
    }
  }
  return {b.finish()};
}

void orthonormality_cells(AuditScope& s, const AppellFamily& fam, int k_from, VerdictBuilder& b) {
  for (int n = k_from; n <= s.cfg.nmax; ++n) {
    for (int k = k_from; k <= s.cfg.nmax; ++k) {
      b.compare(s.ctx->q(), n, order_of(fam), sheffer_pairing(fam, n, k), n == k ? s.ctx->q_factorial(n) : Rational(0),
                fam_detail(fam) + " k=" + std::to_string(k));
    }
  }
}

Verdicts sheffer_orthonormality(AuditScope& s) {
  VerdictBuilder b("sheffer-orthonormality");
  for (const auto& fam : invertible_families(s)) orthonormality_cells(s, fam, 0, b);
  return {b.finish()};
}

Verdicts genocchi_orthonormality(AuditScope& s) {
  const AppellFamily gen = s.book.get("genocchi");
  VerdictBuilder printed("genocchi-orthonormality", std::string("printed"));
  VerdictBuilder shifted("genocchi-orthonormality", std::string("n,k>=1"));
  orthonormality_cells(s, gen, 0, printed);
  orthonormality_cells(s, gen, 1, shifted);
  return {printed.finish(), shifted.finish()};
}

Verdicts appell_functional_expansion(AuditScope& s) {
  Verdicts vs;
  const int n = s.cfg.nmax;
  for (const auto& fam : invertible_families(s)) {
    vs.push_back(check_functional_expansion(fam, Functional(e_q_series(s.ctx, n + 2)), n));
    vs.push_back(check_functional_expansion(fam, Functional(fam.g_series(n + 2)), n));
    for (int i = 0; i < 5; ++i) {
      vs.push_back(check_functional_expansion(fam, Functional(random_series(s.ctx, s.rng, n + 2)), n));
    }
  }
  return relabel("appell-functional-expansion", std::nullopt, vs);
}

Verdicts appell_polynomial_expansion(AuditScope& s) {
  Verdicts vs;
  for (const auto& fam : invertible_families(s)) {
    for (int i = 0; i < s.cfg.instances; ++i) {
      vs.push_back(expansion_coefficients(fam, random_poly(s.ctx, s.rng, 8)).verdict);
    }
  }
  return relabel("appell-polynomial-expansion", std::nullopt, vs);
}

Verdicts recurrence(AuditScope& s) {
  std::map<std::string, Verdicts> by_variant;
  std::vector<std::string> order;
  for (const auto& fam : {s.book.get("bernoulli"), s.book.get("euler"), s.book.get("genocchi")}) {
    for (int n = 0; n <= s.cfg.nmax; ++n) {
      for (auto& v : check_recurrence(fam, n)) {
        const std::string key = v.variant.value_or("");
        if (!by_variant.count(key)) order.push_back(key);
        by_variant[key].push_back(std::move(v));
      }
    }
  }
  Verdicts out;
  for (const auto& key : order) {
    auto merged = relabel("recurrence", key, by_variant[key]);
    out.push_back(std::move(merged.front()));
  }
  return out;
}

Verdicts genocchi_recurrence(AuditScope& s) {
  const AppellFamily gen = s.book.get("genocchi");
  const Ctx& ctx = s.ctx;
  VerdictBuilder generating("genocchi-recurrence", std::string("generating"));
  VerdictBuilder op("genocchi-recurrence", std::string("operator"));
  for (int n = 0; n <= s.cfg.nmax; ++n) {
    const int trunc = n + 6;
    const Series e = e_q_series(ctx, trunc);
    const Series t_minus_1 = Series::from_coeffs(ctx, 0, {Rational(-1), Rational(1)}, trunc);
    // (e_q(t)(t-1) + 1)/(2t^2)
    const Series bracket = -(Rational(1, 2) * (e * t_minus_1 + unit(ctx, trunc))).shifted(-2);
    const Poly lhs = gen.polynomial(n + 1).scale_argument(ctx->q());
    const Poly a = recurrence_rhs(gen, bracket, Rational(1), n, BracketReading::generating);
    const Poly b = recurrence_rhs(gen, bracket, ctx->q_power(n - 1), n, BracketReading::operator_action);
    generating.record(ctx->q(), n, std::nullopt, lhs == a, lhs.to_string(), a.to_string());
    op.record(ctx->q(), n, std::nullopt, lhs == b, lhs.to_string(), b.to_string());
  }
  return {generating.finish(), op.finish()};
}

// ---- Genocchi statements ----

Verdicts genint_closed_form(AuditScope& s) {
  std::vector<Poly> ps{Poly::constant(s.ctx, Rational(1)), Poly(s.ctx)};
  for (int n = 1; n <= s.cfg.nmax; ++n) ps.push_back(x_power(s.ctx, n));
  for (int i = 0; i < s.cfg.instances; ++i) ps.push_back(random_poly(s.ctx, s.rng, 8));
  VerdictBuilder half("genint-closed-form", std::string("half-integral"));
  VerdictBuilder printed("genint-closed-form", std::string("printed"));
  for (const auto& p : ps) {
    for (const auto& v : genocchi_pairing_closed_form(p)) (v.variant == "printed" ? printed : half).absorb(v);
  }
  return {half.finish(), printed.finish()};
}

std::function<Verdicts(AuditScope&)> number_statement(std::string id) {
  return [id](AuditScope& s) { return select(id, audit_number_recurrence(s.book.get("genocchi"), s.cfg.nmax)); };
}

std::function<Verdicts(AuditScope&)> xm1_statement(std::string id) {
  return [id](AuditScope& s) { return select(id, audit_xminus1_expansion(s.book.get("genocchi"), s.cfg.nmax)); };
}

std::vector<Poly> expansion_corpus(AuditScope& s) {
  std::vector<Poly> ps{Poly::constant(s.ctx, Rational(1)), x_power(s.ctx, 1)};
  for (int i = 0; i < s.cfg.instances; ++i) ps.push_back(random_poly(s.ctx, s.rng, 8));
  return ps;
}

/// Rebuilds p from coefficients c_k over G_0..G_deg; true when it matches.
bool rebuilds(const AppellFamily& gen, const Poly& p, const std::vector<Rational>& c, Poly& rebuilt) {
  rebuilt = Poly(p.ctx());
  for (std::size_t k = 0; k < c.size(); ++k) rebuilt = rebuilt + c[k] * gen.polynomial(static_cast<int>(k));
  return rebuilt == p;
}

Verdicts genocchi_expansion_statements(AuditScope& s, const char* id, const char* pairing_variant,
                                       const char* closed_variant) {
  const AppellFamily gen = s.book.get("genocchi");
  const QContext& ctx = *s.ctx;
  VerdictBuilder by_pairing(id, std::string(pairing_variant));
  VerdictBuilder by_closed(id, std::string(closed_variant));
  for (const auto& p : expansion_corpus(s)) {
    const int deg = p.degree();
    const Functional g = genocchi_g(s.ctx, std::max(deg, 0));
    std::vector<Rational> c_pair;
    std::vector<Rational> c_closed;
    for (int k = 0; k <= deg; ++k) {
      const Poly dk = q_derivative_poly(p, k);
      c_pair.push_back(apply(g, dk) / ctx.q_factorial(k));
      c_closed.push_back(genint_values(dk).printed / ctx.q_factorial(k));
    }
    Poly r1(s.ctx);
    Poly r2(s.ctx);
    const bool ok1 = rebuilds(gen, p, c_pair, r1);
    const bool ok2 = rebuilds(gen, p, c_closed, r2);
    by_pairing.record(ctx.q(), deg, std::nullopt, ok1, p.to_string(), r1.to_string(), "p=" + p.to_string());
    by_closed.record(ctx.q(), deg, std::nullopt, ok2, p.to_string(), r2.to_string(), "p=" + p.to_string());
  }
  return {by_pairing.finish(), by_closed.finish()};
}

Verdicts genocchi_integral_expansion(AuditScope& s) {
  return genocchi_expansion_statements(s, "genocchi-integral-expansion", "pairing-form", "printed-integral-form");
}

Verdicts genocchi_coefficient_formula(AuditScope& s) {
  return genocchi_expansion_statements(s, "genocchi-coefficient-formula", "functional-formula", "printed-closed-form");
}

// ---- higher order ----

Verdicts order_numbers(AuditScope& s) {
  VerdictBuilder b("genocchi-order-numbers");
  const AppellFamily gen = s.book.get("genocchi");
  for (int m = 1; m <= s.cfg.mmax; ++m) {
    const AppellFamily fam = s.book.genocchi_order(m);
    for (int n = 0; n <= s.cfg.nmax; ++n) {
      const HigherOrderSides sides = higher_order_number_sides(gen, fam, n);
      b.compare(s.ctx->q(), n, m, sides.series_value, sides.multinomial_value);
    }
  }
  return {b.finish()};
}

Verdicts order_orthonormality(AuditScope& s) {
  VerdictBuilder printed("genocchi-order-orthonormality", std::string("printed"));
  VerdictBuilder shifted("genocchi-order-orthonormality", std::string("n,k>=m"));
  for (int m = 1; m <= s.cfg.mmax; ++m) {
    const AppellFamily fam = s.book.genocchi_order(m);
    orthonormality_cells(s, fam, 0, printed);
    orthonormality_cells(s, fam, m, shifted);
  }
  return {printed.finish(), shifted.finish()};
}

Verdicts order_reduction(AuditScope& s) {
  std::map<std::string, VerdictBuilder> by_variant;
  std::vector<std::string> order;
  for (int m = 1; m <= s.cfg.mmax; ++m) {
    for (int n = 0; n <= s.cfg.nmax; ++n) {
      for (const auto& v : audit_order_reduction(s.book, n, m)) {
        const std::string key = v.variant.value_or("");
        if (!by_variant.count(key)) {
          order.push_back(key);
          by_variant.emplace(key, VerdictBuilder("genocchi-order-reduction", key));
        }
        by_variant.at(key).absorb(v);
      }
    }
  }
  Verdicts out;
  for (const auto& key : order) out.push_back(by_variant.at(key).finish());
  return out;
}

Verdicts order_m_expansion(AuditScope& s) {
  const QContext& ctx = *s.ctx;
  VerdictBuilder printed("order-m-expansion", std::string("printed-range"));
  VerdictBuilder shifted("order-m-expansion", std::string("shifted-range"));
  const AppellFamily gen = s.book.get("genocchi");
  for (int m = 1; m <= s.cfg.mmax; ++m) {
    const AppellFamily fam = s.book.genocchi_order(m);
    std::vector<Poly> ps = expansion_corpus(s);
    for (int n = 0; n <= s.cfg.nmax; ++n) ps.push_back(gen.polynomial(n));
    for (const auto& p : ps) {
      const int deg = p.degree();
      const BasisExpansion e = expand_in_order_m_basis(fam, p);
      Poly rebuilt(s.ctx);
      for (std::size_t k = 0; k < e.formula->coeffs.size(); ++k) {
        rebuilt = rebuilt + e.formula->coeffs[k] * fam.polynomial(static_cast<int>(k));
      }
      printed.record(ctx.q(), std::max(deg, 0), m, e.formula->reproduces_source, p.to_string(), rebuilt.to_string(),
                     "p=" + p.to_string());

      const Series gm = fam.g_series(std::max(deg, 0));
      Poly shifted_sum(s.ctx);
      for (int k = m; k <= deg + m; ++k) {
        const Rational c = apply(Functional(gm.shifted(k)), p) / ctx.q_factorial(k);
        shifted_sum = shifted_sum + c * fam.polynomial(k);
      }
      shifted.record(ctx.q(), std::max(deg, 0), m, shifted_sum == p, p.to_string(), shifted_sum.to_string(),
                     "p=" + p.to_string());
    }
  }
  return {printed.finish(), shifted.finish()};
}

Verdicts merge_basis_audits(const char* id, const std::vector<BasisAudit>& audits) {
  std::map<std::string, VerdictBuilder> by_variant;
  std::vector<std::string> order;
  for (const auto& a : audits) {
    for (const auto& v : a.verdicts) {
      const std::string key = v.variant.value_or("");
      if (!by_variant.count(key)) {
        order.push_back(key);
        by_variant.emplace(key, VerdictBuilder(id, key));
      }
      by_variant.at(key).absorb(v);
    }
  }
  Verdicts out;
  for (const auto& key : order) out.push_back(by_variant.at(key).finish());
  return out;
}

Verdicts genocchi_order_m_closed_form(AuditScope& s) {
  std::vector<BasisAudit> audits;
  for (int m = 1; m <= s.cfg.mmax; ++m) {
    for (int n = 0; n <= s.cfg.nmax; ++n) audits.push_back(audit_order_m_closed_form(s.book, n, m));
  }
  return merge_basis_audits("genocchi-order-m-closed-form", audits);
}

Verdicts appell_order_m_closed_form(AuditScope& s) {
  std::vector<BasisAudit> audits;
  for (const auto& fam : invertible_families(s)) {
    for (int m = 1; m <= s.cfg.mmax; ++m) {
      for (int n = 0; n <= s.cfg.nmax; ++n) {
        audits.push_back(appell_in_genocchi_basis(fam, s.book.genocchi_order(m), n));
      }
    }
  }
  return merge_basis_audits("appell-order-m-closed-form", audits);
}

std::vector<IdentitySpec> build_registry() {
  return {
      {"q-binomial-formula", "sum_k [n,k] q^{k(k-1)/2} (-1)^k a^k = (a;q)_n", q_binomial_formula},
      {"eq-qderivative-fixed-point", "D_q e_q(t) = e_q(t)", eq_fixed_point},
      {"jackson-ftc", "D_q int_0^x p = p and int_a^b = int_0^b - int_0^a", jackson_ftc},
      {"qderivative-power-rule", "t^k x^n = D_q^k x^n, printed with [n]!/[k]!", power_rule},
      {"eq-particular", "<t^k | x^n> = [n]! delta_{n,k}", eq_particular},
      {"eval-functional", "<e_q(yt) | p> = p(y) and <e_q(yt) +- 1 | p> = p(y) +- p(0)", eval_functional},
      {"functional-expansion", "f(t) = sum_k <f | x^k>/[k]! t^k", expansion_f},
      {"polynomial-expansion", "p(x) = sum_k <t^k | p>/[k]! x^k", expansion_p},
      {"pairing-adjoint", "<f g | p> = <f | g p>", pairing_adjoint},
      {"pairing-convolution", "<f g | x^n> = sum_k [n,k] <f | x^k><g | x^{n-k}>", pairing_convolution},
      {"pairing-multinomial", "<f_1...f_k | x^n> as a q-multinomial convolution", pairing_multinomial},
      {"operator-expansion", "f(t) x^n = sum_k [n,k] a_k x^{n-k}", operator_expansion},
      {"operator-derivative", "t^k p = D_q^k p and p^(k)(0) = <t^k | p> = <1 | p^(k)>", operator_derivative},
      {"appell-generating", "A(t) e_q(xt) = sum_n A_n(x) t^n/[n]!", appell_generating},
      {"appell-numbers-at-zero", "A_n(0) = A_n", appell_numbers},
      {"appell-derivative", "D_q A_n(x) = [n] A_{n-1}(x)", appell_derivative},
      {"appell-binomial-form", "A_n(x) = sum_k [n,k] <g^{-1} | x^{n-k}> x^k", appell_binomial_form},
      {"appell-operator-form", "A_n(x) = g^{-1}(t) x^n", appell_operator_form},
      {"sheffer-orthonormality", "<g t^k | A_n> = [n]! delta_{n,k}, Bernoulli and Euler", sheffer_orthonormality},
      {"genocchi-orthonormality", "<(e_q+1)/(2t) t^k | G_n> = [n]! delta_{n,k}", genocchi_orthonormality},
      {"appell-functional-expansion", "h(t) = sum_k <h | A_k>/[k]! g(t) t^k", appell_functional_expansion},
      {"appell-polynomial-expansion", "p(x) = sum_k <g t^k | p>/[k]! A_k(x)", appell_polynomial_expansion},
      {"recurrence", "A_{n+1}(qx) = [qx - q^n D_q g(t)/g(qt)] A_n(x), statement and proof forms", recurrence},
      {"genocchi-recurrence", "G_{n+1}(qx) = [qx - q^{n-1}(e_q(t)(t-1)+1)/(2t^2)] G_n(x)",
       genocchi_recurrence},
      {"genint-closed-form", "<(e_q+1)/(2t) | p> = (1/2)(int_0^1 p + p(0))", genint_closed_form},
      {"genocchi-g0-claim", "G_0 = 1", number_statement("genocchi-g0-claim")},
      {"genocchi-number-recurrence", "sum_{k=1}^n [n+1,k+1] G_{n-k} = -[n+1](1 + G_n)",
       number_statement("genocchi-number-recurrence")},
      {"genocchi-pairing-with-g", "(1/2)(int_0^1 G_n + G_n(0)) = [n]! delta_{n,0}",
       number_statement("genocchi-pairing-with-g")},
      {"genocchi-integral-convolution", "int_0^1 G_n = sum_k [n,k] G_{n-k}/[k+1]",
       number_statement("genocchi-integral-convolution")},
      {"genocchi-integral-piecewise", "int_0^1 G_n = 2 - G_0 (n = 0), -G_0 (n > 0)",
       number_statement("genocchi-integral-piecewise")},
      {"genocchi-integral-expansion", "p = (1/2) sum_k G_k/[k]! (int_0^1 t^k p + t^k p(0))", genocchi_integral_expansion},
      {"genocchi-coefficient-formula", "p = sum_{i<=n} c_i G_i with c_k = <(e_q+1)/(2t) | p^(k)>/[k]!",
       genocchi_coefficient_formula},
      {"xm1-pairing", "<e_q(t) t^k | (x-1)^n> = [n]! delta_{n,k}", xm1_statement("xm1-pairing")},
      {"xm1-derivative", "t^k (x-1)^n = [n]!/[n-k]! (x-1)^{n-k}", xm1_statement("xm1-derivative")},
      {"xm1-binomial-expansion", "(x-1)^n = sum_l (-1)^{n-l} q^{l(l-1)/2} x^l", xm1_statement("xm1-binomial-expansion")},
      {"xm1-genocchi-expansion", "G_n(x) = sum_k [n,k] G_{n-k}(1) (x-1)^n", xm1_statement("xm1-genocchi-expansion")},
      {"xm1-in-genocchi", "(x-1)^n in the Genocchi polynomials, unbound [m+1]",
       xm1_statement("xm1-in-genocchi")},
      {"genocchi-order-numbers", "G^[m]_n = sum over i_1+..+i_m = n of [n; i] prod G_{i_j}", order_numbers},
      {"genocchi-order-orthonormality", "<((e_q+1)/(2t))^m t^k | G^[m]_n> = [n]! delta_{n,k}", order_orthonormality},
      {"genocchi-order-reduction", "G^[m]_n(x) = 2^{1-m} sum_k [n,k] G^[m-1]_{n-k} G_k(x)", order_reduction},
      {"order-m-expansion", "p = sum_{k<=n} <g^m t^k | p> G^[m]_k/[k]!", order_m_expansion},
      {"genocchi-order-m-closed-form", "G_n(x) in the order-m Genocchi polynomials, two-branch closed form", genocchi_order_m_closed_form},
      {"appell-order-m-closed-form", "A_n(x) in the order-m Genocchi polynomials, same closed form", appell_order_m_closed_form},
  };
}

std::seed_seq::result_type mix(const std::string& text) {
  std::uint32_t h = 2166136261u;
  for (unsigned char c : text) h = (h ^ c) * 16777619u;
  return h;
}

}  // namespace

const std::vector<IdentitySpec>& identity_registry() {
  static const std::vector<IdentitySpec> registry = build_registry();
  return registry;
}

const IdentitySpec* find_identity(const std::string& id) {
  for (const auto& spec : identity_registry()) {
    if (spec.id == id) return &spec;
  }
  return nullptr;
}

IdentityReport summarize(const IdentitySpec& spec, std::vector<AuditVerdict> merged) {
  IdentityReport r;
  r.id = spec.id;
  r.description = spec.description;
  r.verdicts = std::move(merged);
  std::size_t ok = 0;
  for (const auto& v : r.verdicts) {
    if (v.verified()) {
      ++ok;
      if (v.variant) r.resolved_variants.push_back(*v.variant);
    }
  }
  if (ok == r.verdicts.size()) {
    r.status = Status::verified;
    r.resolved_variants.clear();
  } else if (ok == 0) {
    r.status = Status::falsified;
  } else {
    r.status = Status::variant_resolved;
  }
  return r;
}

std::vector<IdentityReport> run_audit(const AuditConfig& cfg, const std::vector<std::string>& ids) {
  std::vector<const IdentitySpec*> specs;
  if (ids.empty()) {
    for (const auto& spec : identity_registry()) specs.push_back(&spec);
  } else {
    for (const auto& id : ids) {
      const IdentitySpec* spec = find_identity(id);
      if (!spec) throw std::invalid_argument("unknown identity '" + id + "'");
      specs.push_back(spec);
    }
  }

  Workspace ws(cfg.q_grid);
  const std::size_t nq = cfg.q_grid.size();
  const std::size_t cells = specs.size() * nq;
  std::vector<Verdicts> results(cells);
  std::vector<std::exception_ptr> errors(cells);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < cells; i = next++) {
      const IdentitySpec& spec = *specs[i / nq];
      const Rational& q = cfg.q_grid[i % nq];
      try {
        FamilyBook& book = ws.book(q);
        std::seed_seq seq{mix(spec.id), mix(q.to_string()), static_cast<std::seed_seq::result_type>(cfg.seed),
                          static_cast<std::seed_seq::result_type>(cfg.seed >> 32)};
        std::mt19937_64 rng(seq);
        AuditScope scope{book.ctx(), book, cfg, rng};
        results[i] = spec.run(scope);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned n_threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : std::thread::hardware_concurrency();
  n_threads = std::max(1u, std::min<unsigned>(n_threads, static_cast<unsigned>(cells)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<IdentityReport> out;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    std::vector<std::string> order;
    std::map<std::string, VerdictBuilder> by_variant;
    for (std::size_t j = 0; j < nq; ++j) {
      for (const auto& v : results[s * nq + j]) {
        const std::string key = v.variant.value_or("");
        if (!by_variant.count(key)) {
          order.push_back(key);
          by_variant.emplace(key, VerdictBuilder(specs[s]->id, v.variant));
        }
        by_variant.at(key).absorb(v);
      }
    }
    std::vector<AuditVerdict> merged;
    for (const auto& key : order) merged.push_back(by_variant.at(key).finish());
    out.push_back(summarize(*specs[s], std::move(merged)));
  }
  return out;
}

}  // namespace qumbral
