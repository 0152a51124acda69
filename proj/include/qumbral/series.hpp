#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qumbral/qcontext.hpp"

namespace qumbral {

/// A coefficient beyond a series' truncation was requested.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands built over different q.
class ContextMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Truncated Laurent series a_v t^v + ... + a_N t^N + O(t^{N+1}) over the
/// rationals.
///
/// Coefficients up to and including the truncation N are exact; nothing is
/// known above it and every accessor refuses to guess. The stored leading
/// coefficient is nonzero; the zero series has no stored coefficients.
class Series {
 public:
  static Series zero(Ctx ctx, int truncation);
  static Series monomial(Ctx ctx, int power, Rational coeff, int truncation);
  /// coeffs[i] is the coefficient of t^(valuation + i); entries above
  /// `truncation` are dropped and leading zeros are stripped.
  static Series from_coeffs(Ctx ctx, int valuation, std::vector<Rational> coeffs, int truncation);

  const Ctx& ctx() const { return ctx_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Lowest power with a nonzero coefficient; truncation + 1 for the zero series.
  int valuation() const { return is_zero() ? trunc_ + 1 : val_; }
  int truncation() const { return trunc_; }

  /// Coefficient of t^n. Throws TruncationError for n > truncation().
  Rational coeff(int n) const;
  /// Coefficients of t^v..t^N in order (empty for the zero series).
  const std::vector<Rational>& stored() const { return coeffs_; }

  /// Same series, known only up to t^n (n <= truncation()).
  Series truncated(int n) const;
  /// Multiplication by t^k; exact, shifts the truncation too.
  Series shifted(int k) const;

  Series operator-() const;
  friend Series operator+(const Series& a, const Series& b);
  friend Series operator-(const Series& a, const Series& b);
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator*(const Rational& c, const Series& f);

  /// Exact comparison of the coefficients both sides know.
  bool agrees_with(const Series& other) const;

  std::string to_string() const;

 private:
  Series(Ctx ctx, int val, std::vector<Rational> coeffs, int trunc);
  void normalize();

  Ctx ctx_;
  int val_ = 0;
  std::vector<Rational> coeffs_;
  int trunc_ = 0;
};

Series series_add(const Series& f, const Series& g);
Series series_mul(const Series& f, const Series& g);
Series series_scalar(const Rational& c, const Series& f);

/// Multiplicative inverse. Valuation negates; the relative precision
/// (truncation - valuation) is preserved. Throws std::domain_error on zero.
Series series_invert(const Series& f);
/// f^k for k >= 0.
Series series_pow(const Series& f, int k);

/// e_q(t) = sum t^n/[n]_q! up to t^N.
Series e_q_series(const Ctx& ctx, int n_max);
/// Coefficientwise q-derivative a_n t^n -> [n]_q a_n t^{n-1}.
Series q_derivative_series(const Series& f);
/// f(c t).
Series scale_argument(const Series& f, const Rational& c);

struct SeriesClass {
  std::optional<int> valuation;  // empty for the zero series
  bool is_zero = false;
  bool is_delta = false;
  bool is_invertible = false;
};
SeriesClass classify(const Series& f);

void require_same_ctx(const QContext& a, const QContext& b);

}  // namespace qumbral
