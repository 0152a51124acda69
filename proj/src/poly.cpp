#include "qumbral/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "qumbral/series.hpp"

namespace qumbral {

Poly::Poly(Ctx ctx, std::vector<Rational> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(Ctx ctx, Rational c) { return Poly(std::move(ctx), {std::move(c)}); }

Poly Poly::monomial(Ctx ctx, int power, Rational c) {
  if (power < 0) throw std::invalid_argument("negative monomial power");
  std::vector<Rational> coeffs(static_cast<std::size_t>(power + 1));
  coeffs.back() = std::move(c);
  return Poly(std::move(ctx), std::move(coeffs));
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational Poly::coeff(int k) const {
  if (k < 0 || k > degree()) return Rational(0);
  return c_[static_cast<std::size_t>(k)];
}

Rational Poly::leading() const { return is_zero() ? Rational(0) : c_.back(); }

Rational Poly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::operator-() const {
  std::vector<Rational> c;
  c.reserve(c_.size());
  for (const auto& a : c_) c.push_back(-a);
  return Poly(ctx_, std::move(c));
}

Poly operator+(const Poly& a, const Poly& b) {
  require_same_ctx(*a.ctx_, *b.ctx_);
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
  }
  return Poly(a.ctx_, std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  require_same_ctx(*a.ctx_, *b.ctx_);
  if (a.is_zero() || b.is_zero()) return Poly(a.ctx_);
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(a.ctx_, std::move(c));
}

Poly operator*(const Rational& c, const Poly& p) {
  std::vector<Rational> out;
  out.reserve(p.c_.size());
  for (const auto& a : p.c_) out.push_back(c * a);
  return Poly(p.ctx_, std::move(out));
}

bool operator==(const Poly& a, const Poly& b) { return a.ctx_->same_q(*b.ctx_) && a.c_ == b.c_; }

Poly Poly::scale_argument(const Rational& c) const {
  std::vector<Rational> out;
  out.reserve(c_.size());
  Rational factor(1);
  for (const auto& a : c_) {
    out.push_back(a * factor);
    factor *= c;
  }
  return Poly(ctx_, std::move(out));
}

Poly Poly::times_x() const {
  if (is_zero()) return *this;
  std::vector<Rational> out;
  out.reserve(c_.size() + 1);
  out.emplace_back(0);
  out.insert(out.end(), c_.begin(), c_.end());
  return Poly(ctx_, std::move(out));
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    Rational c = c_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    if (!first) {
      os << (c.sign() < 0 ? " - " : " + ");
      c = c.abs();
    }
    first = false;
    if (k == 0) {
      os << c;
    } else {
      if (!c.is_one()) os << c << "*";
      os << "x";
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

std::vector<std::string> Poly::coeff_strings() const {
  std::vector<std::string> out;
  out.reserve(c_.size());
  for (const auto& a : c_) out.push_back(a.to_string());
  return out;
}

Poly q_derivative_poly(const Poly& p) {
  if (p.degree() < 1) return Poly(p.ctx());
  std::vector<Rational> out(static_cast<std::size_t>(p.degree()));
  for (int n = 1; n <= p.degree(); ++n) {
    out[static_cast<std::size_t>(n - 1)] = p.ctx()->q_number(n) * p.coeff(n);
  }
  return Poly(p.ctx(), std::move(out));
}

Poly q_derivative_poly(const Poly& p, int k) {
  Poly out = p;
  for (int i = 0; i < k; ++i) out = q_derivative_poly(out);
  return out;
}

Poly jackson_antiderivative(const Poly& p) {
  if (p.is_zero()) return p;
  std::vector<Rational> out(static_cast<std::size_t>(p.degree() + 2));
  for (int k = 0; k <= p.degree(); ++k) {
    out[static_cast<std::size_t>(k + 1)] = p.coeff(k) / p.ctx()->q_number(k + 1);
  }
  return Poly(p.ctx(), std::move(out));
}

Rational jackson_integral(const Poly& p, const Rational& a, const Rational& b) {
  const Poly prim = jackson_antiderivative(p);
  return prim.eval(b) - prim.eval(a);
}

Poly q_add_power(const Ctx& ctx, int n, const Rational& y) {
  if (n < 0) throw std::invalid_argument("q_add_power needs n >= 0");
  std::vector<Rational> out(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) {
    out[static_cast<std::size_t>(n - k)] =
        ctx->q_binomial(n, k) * ctx->q_power(static_cast<long>(k) * (k - 1) / 2) * y.pow(k);
  }
  return Poly(ctx, std::move(out));
}

Poly parse_poly(const Ctx& ctx, std::string_view text) {
  std::vector<Rational> coeffs;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    coeffs.push_back(Rational::parse(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Poly(ctx, std::move(coeffs));
}

}  // namespace qumbral
