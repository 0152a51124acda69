#include "qumbral/series.hpp"

#include <algorithm>
#include <sstream>

namespace qumbral {

void require_same_ctx(const QContext& a, const QContext& b) {
  if (!a.same_q(b)) {
    throw ContextMismatch("operands use different q: " + a.label() + " vs " + b.label());
  }
}

Series::Series(Ctx ctx, int val, std::vector<Rational> coeffs, int trunc)
    : ctx_(std::move(ctx)), val_(val), coeffs_(std::move(coeffs)), trunc_(trunc) {
  normalize();
}

void Series::normalize() {
  const long keep = static_cast<long>(trunc_) - val_ + 1;
  if (keep <= 0) {
    coeffs_.clear();
  } else if (coeffs_.size() > static_cast<std::size_t>(keep)) {
    coeffs_.resize(static_cast<std::size_t>(keep));
  }
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
  if (lead == coeffs_.size()) {
    coeffs_.clear();
    val_ = 0;
    return;
  }
  coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
  val_ += static_cast<int>(lead);
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Series Series::zero(Ctx ctx, int truncation) { return Series(std::move(ctx), 0, {}, truncation); }

Series Series::monomial(Ctx ctx, int power, Rational coeff, int truncation) {
  return Series(std::move(ctx), power, {std::move(coeff)}, truncation);
}

Series Series::from_coeffs(Ctx ctx, int valuation, std::vector<Rational> coeffs, int truncation) {
  return Series(std::move(ctx), valuation, std::move(coeffs), truncation);
}

Rational Series::coeff(int n) const {
  if (n > trunc_) {
    throw TruncationError("coefficient of t^" + std::to_string(n) + " requested from a series truncated at t^" +
                          std::to_string(trunc_));
  }
  if (is_zero() || n < val_) return Rational(0);
  const auto idx = static_cast<std::size_t>(n - val_);
  return idx < coeffs_.size() ? coeffs_[idx] : Rational(0);
}

Series Series::truncated(int n) const {
  if (n > trunc_) {
    throw TruncationError("cannot extend truncation from t^" + std::to_string(trunc_) + " to t^" +
                          std::to_string(n));
  }
  return Series(ctx_, val_, coeffs_, n);
}

Series Series::shifted(int k) const { return Series(ctx_, val_ + k, coeffs_, trunc_ + k); }

Series Series::operator-() const {
  std::vector<Rational> c;
  c.reserve(coeffs_.size());
  for (const auto& a : coeffs_) c.push_back(-a);
  return Series(ctx_, val_, std::move(c), trunc_);
}

Series operator+(const Series& a, const Series& b) {
  require_same_ctx(*a.ctx_, *b.ctx_);
  const int trunc = std::min(a.trunc_, b.trunc_);
  if (a.is_zero()) return b.truncated(trunc);
  if (b.is_zero()) return a.truncated(trunc);
  const int lo = std::min(a.val_, b.val_);
  if (lo > trunc) return Series::zero(a.ctx_, trunc);
  std::vector<Rational> c(static_cast<std::size_t>(trunc - lo + 1));
  for (int n = lo; n <= trunc; ++n) c[static_cast<std::size_t>(n - lo)] = a.coeff(n) + b.coeff(n);
  return Series(a.ctx_, lo, std::move(c), trunc);
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
  require_same_ctx(*a.ctx_, *b.ctx_);
  const int va = a.valuation();
  const int vb = b.valuation();
  const int trunc = std::min(a.trunc_ + vb, b.trunc_ + va);
  if (a.is_zero() || b.is_zero()) return Series::zero(a.ctx_, trunc);
  const int lo = va + vb;
  if (lo > trunc) return Series::zero(a.ctx_, trunc);
  std::vector<Rational> c(static_cast<std::size_t>(trunc - lo + 1));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size() && i + j < c.size(); ++j) {
      c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return Series(a.ctx_, lo, std::move(c), trunc);
}

Series operator*(const Rational& c, const Series& f) {
  if (c.is_zero()) return Series::zero(f.ctx_, f.trunc_);
  std::vector<Rational> out;
  out.reserve(f.coeffs_.size());
  for (const auto& a : f.coeffs_) out.push_back(c * a);
  return Series(f.ctx_, f.val_, std::move(out), f.trunc_);
}

bool Series::agrees_with(const Series& other) const {
  require_same_ctx(*ctx_, *other.ctx_);
  const int trunc = std::min(trunc_, other.trunc_);
  const int lo = std::min(valuation(), other.valuation());
  for (int n = lo; n <= trunc; ++n) {
    if (coeff(n) != other.coeff(n)) return false;
  }
  return true;
}

std::string Series::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    const int power = val_ + static_cast<int>(i);
    Rational c = coeffs_[i];
    if (!first) {
      os << (c.sign() < 0 ? " - " : " + ");
      c = c.abs();
    }
    os << c << "*t^" << power;
    first = false;
  }
  if (first) os << "0";
  os << " + O(t^" << (trunc_ + 1) << ")";
  return os.str();
}

Series series_add(const Series& f, const Series& g) { return f + g; }
Series series_mul(const Series& f, const Series& g) { return f * g; }
Series series_scalar(const Rational& c, const Series& f) { return c * f; }

Series series_invert(const Series& f) {
  if (f.is_zero()) throw std::domain_error("cannot invert the zero series");
  const int v = f.valuation();
  const int rel = f.truncation() - v;  // number of known coefficients minus one
  const auto& a = f.stored();
  const Rational lead_inv = a.front().inverse();
  std::vector<Rational> b(static_cast<std::size_t>(rel + 1));
  b[0] = lead_inv;
  for (int n = 1; n <= rel; ++n) {
    Rational acc(0);
    for (int i = 1; i <= n && static_cast<std::size_t>(i) < a.size(); ++i) {
      acc += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(n - i)];
    }
    b[static_cast<std::size_t>(n)] = -acc * lead_inv;
  }
  return Series::from_coeffs(f.ctx(), -v, std::move(b), -v + rel);
}

Series series_pow(const Series& f, int k) {
  if (k < 0) throw std::invalid_argument("series_pow with negative exponent");
  if (k == 0) return Series::monomial(f.ctx(), 0, Rational(1), std::max(f.truncation() - f.valuation(), 0));
  Series acc = f;
  for (int i = 1; i < k; ++i) acc = acc * f;
  return acc;
}

Series e_q_series(const Ctx& ctx, int n_max) {
  if (n_max < 0) throw std::invalid_argument("e_q_series needs N >= 0");
  std::vector<Rational> c;
  c.reserve(static_cast<std::size_t>(n_max + 1));
  for (int n = 0; n <= n_max; ++n) c.push_back(ctx->q_factorial(n).inverse());
  return Series::from_coeffs(ctx, 0, std::move(c), n_max);
}

Series q_derivative_series(const Series& f) {
  const Ctx& ctx = f.ctx();
  if (f.is_zero()) return Series::zero(ctx, f.truncation() - 1);
  const int v = f.valuation();
  std::vector<Rational> c;
  c.reserve(f.stored().size());
  for (std::size_t i = 0; i < f.stored().size(); ++i) {
    const int n = v + static_cast<int>(i);
    c.push_back(ctx->q_number(n) * f.stored()[i]);
  }
  return Series::from_coeffs(ctx, v - 1, std::move(c), f.truncation() - 1);
}

Series scale_argument(const Series& f, const Rational& c) {
  if (f.is_zero()) return f;
  const int v = f.valuation();
  if (c.is_zero()) {
    if (v < 0) throw std::domain_error("scale_argument by 0 of a series with negative valuation");
    return Series::from_coeffs(f.ctx(), 0, {f.coeff(0)}, f.truncation());
  }
  std::vector<Rational> out;
  out.reserve(f.stored().size());
  Rational factor = c.pow(v);
  for (const auto& a : f.stored()) {
    out.push_back(a * factor);
    factor *= c;
  }
  return Series::from_coeffs(f.ctx(), v, std::move(out), f.truncation());
}

SeriesClass classify(const Series& f) {
  SeriesClass out;
  if (f.is_zero()) {
    out.is_zero = true;
    return out;
  }
  out.valuation = f.valuation();
  out.is_invertible = *out.valuation == 0;
  out.is_delta = *out.valuation == 1;
  return out;
}

}  // namespace qumbral
