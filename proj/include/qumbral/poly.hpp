#pragma once

#include <string>
#include <vector>

#include "qumbral/qcontext.hpp"

namespace qumbral {

/// Polynomial in x with rational coefficients, c_0 + c_1 x + ... + c_d x^d.
/// The leading coefficient is nonzero; the zero polynomial has degree -1.
class Poly {
 public:
  explicit Poly(Ctx ctx) : ctx_(std::move(ctx)) {}
  Poly(Ctx ctx, std::vector<Rational> coeffs);

  static Poly constant(Ctx ctx, Rational c);
  static Poly monomial(Ctx ctx, int power, Rational c = Rational(1));

  const Ctx& ctx() const { return ctx_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  /// Coefficient of x^k, zero beyond the degree.
  Rational coeff(int k) const;
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational leading() const;

  Rational eval(const Rational& x) const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rational& c, const Poly& p);
  friend bool operator==(const Poly& a, const Poly& b);

  /// p(c x).
  Poly scale_argument(const Rational& c) const;
  /// x p(x).
  Poly times_x() const;

  /// "c_d*x^d + ... + c_0".
  std::string to_string() const;
  /// Ascending coefficient strings ["c_0", "c_1", ...].
  std::vector<std::string> coeff_strings() const;

 private:
  void trim();

  Ctx ctx_;
  std::vector<Rational> c_;
};

inline Rational eval(const Poly& p, const Rational& x) { return p.eval(x); }

/// D_q p, x^n -> [n]_q x^{n-1}.
Poly q_derivative_poly(const Poly& p);
/// D_q^k p.
Poly q_derivative_poly(const Poly& p, int k);
/// The Jackson antiderivative vanishing at 0: x^k -> x^{k+1}/[k+1]_q.
Poly jackson_antiderivative(const Poly& p);
/// Definite Jackson integral from a to b, F(b) - F(a).
Rational jackson_integral(const Poly& p, const Rational& a, const Rational& b);
/// (x + y)_q^n = sum_k [n,k]_q q^{k(k-1)/2} x^{n-k} y^k.
Poly q_add_power(const Ctx& ctx, int n, const Rational& y);

/// Parses a comma separated ascending coefficient list "c0,c1,...".
Poly parse_poly(const Ctx& ctx, std::string_view text);

}  // namespace qumbral
