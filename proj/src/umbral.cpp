#include "qumbral/umbral.hpp"

#include <stdexcept>

namespace qumbral {

namespace {

void require_known(const Series& f, int n, const char* what) {
  if (f.truncation() < n) {
    throw TruncationError(std::string(what) + ": functional known to t^" + std::to_string(f.truncation()) +
                          " but t^" + std::to_string(n) + " is needed");
  }
}

}  // namespace

Rational apply(const Functional& f, const Poly& p) {
  require_same_ctx(*f.ctx(), *p.ctx());
  require_known(f.series(), p.degree(), "apply");
  const QContext& q = *f.ctx();
  Rational acc(0);
  for (int n = 0; n <= p.degree(); ++n) {
    const Rational& pn = p.coeffs()[static_cast<std::size_t>(n)];
    if (pn.is_zero()) continue;
    acc += pn * q.q_factorial(n) * f.series().coeff(n);
  }
  return acc;
}

Poly operator_apply(const Functional& f, const Poly& p) {
  require_same_ctx(*f.ctx(), *p.ctx());
  require_known(f.series(), p.degree(), "operator_apply");
  const Series& s = f.series();
  const QContext& q = *f.ctx();
  if (p.is_zero() || s.is_zero()) return Poly(p.ctx());
  const int v = s.valuation();
  const int out_degree = p.degree() - std::min(v, 0);
  std::vector<Rational> out(static_cast<std::size_t>(std::max(out_degree, 0) + 1));
  for (int n = 0; n <= p.degree(); ++n) {
    const Rational& pn = p.coeffs()[static_cast<std::size_t>(n)];
    if (pn.is_zero()) continue;
    const Rational nf = q.q_factorial(n);
    for (int k = v; k <= n; ++k) {
      const Rational a = s.coeff(k);
      if (a.is_zero()) continue;
      out[static_cast<std::size_t>(n - k)] += pn * a * nf / q.q_factorial(n - k);
    }
  }
  return Poly(p.ctx(), std::move(out));
}

std::pair<Rational, Rational> adjoint_sides(const Functional& f, const Functional& g, const Poly& p) {
  const Rational lhs = apply(Functional(f.series() * g.series()), p);
  const Rational rhs = apply(f, operator_apply(g, p));
  return {lhs, rhs};
}

bool check_adjoint(const Functional& f, const Functional& g, const Poly& p) {
  const auto [lhs, rhs] = adjoint_sides(f, g, p);
  return lhs == rhs;
}

std::pair<Rational, Rational> pairing_convolution_sides(const Functional& f, const Functional& g, int n) {
  const Ctx& ctx = f.ctx();
  const Rational lhs = apply(Functional(f.series() * g.series()), Poly::monomial(ctx, n));
  Rational rhs(0);
  for (int k = 0; k <= n; ++k) {
    rhs += ctx->q_binomial(n, k) * apply(f, Poly::monomial(ctx, k)) * apply(g, Poly::monomial(ctx, n - k));
  }
  return {lhs, rhs};
}

bool check_pairing_convolution(const Functional& f, const Functional& g, int n) {
  const auto [lhs, rhs] = pairing_convolution_sides(f, g, n);
  return lhs == rhs;
}

std::pair<Rational, Rational> pairing_multinomial_sides(std::span<const Functional> fs, int n) {
  if (fs.empty()) throw std::invalid_argument("pairing_multinomial needs at least one functional");
  const Ctx& ctx = fs.front().ctx();
  Series product = fs.front().series();
  for (std::size_t i = 1; i < fs.size(); ++i) product = product * fs[i].series();
  const Rational lhs = apply(Functional(product), Poly::monomial(ctx, n));

  // Individual pairings <f_j | x^i>, i <= n.
  std::vector<std::vector<Rational>> table(fs.size());
  for (std::size_t j = 0; j < fs.size(); ++j) {
    for (int i = 0; i <= n; ++i) table[j].push_back(apply(fs[j], Poly::monomial(ctx, i)));
  }
  Rational rhs(0);
  for_each_composition(n, static_cast<int>(fs.size()), [&](std::span<const int> parts) {
    Rational term = ctx->q_multinomial(n, parts);
    for (std::size_t j = 0; j < parts.size() && !term.is_zero(); ++j) {
      term *= table[j][static_cast<std::size_t>(parts[j])];
    }
    rhs += term;
  });
  return {lhs, rhs};
}

bool check_pairing_multinomial(std::span<const Functional> fs, int n) {
  const auto [lhs, rhs] = pairing_multinomial_sides(fs, n);
  return lhs == rhs;
}

Series expand_functional(const Functional& f, int n_max) {
  require_known(f.series(), n_max, "expand_functional");
  const Ctx& ctx = f.ctx();
  std::vector<Rational> c;
  for (int k = 0; k <= n_max; ++k) c.push_back(apply(f, Poly::monomial(ctx, k)) / ctx->q_factorial(k));
  return Series::from_coeffs(ctx, 0, std::move(c), n_max);
}

Poly expand_polynomial(const Poly& p) {
  const Ctx& ctx = p.ctx();
  std::vector<Rational> c;
  for (int k = 0; k <= p.degree(); ++k) {
    const Functional tk(Series::monomial(ctx, k, Rational(1), std::max(p.degree(), k)));
    c.push_back(apply(tk, p) / ctx->q_factorial(k));
  }
  return Poly(ctx, std::move(c));
}

}  // namespace qumbral
