#include "qumbral/qcontext.hpp"

#include <numeric>

namespace qumbral {

Ctx QContext::make(const Rational& q) {
  if (q.sign() <= 0 || q > Rational(1)) {
    throw std::invalid_argument("q must satisfy 0 < q < 1 or q = 1, got " + q.to_string());
  }
  return Ctx(new QContext(q));
}

QContext::QContext(Rational q) : q_(std::move(q)), classical_(q_.is_one()) {
  numbers_.push_back(Rational(0));
  factorials_.push_back(Rational(1));
}

Rational QContext::q_power(long a) const { return classical_ ? Rational(1) : q_.pow(a); }

Rational QContext::q_number_uncached(long a) const {
  if (classical_) return Rational(a);
  return (Rational(1) - q_.pow(a)) / (Rational(1) - q_);
}

void QContext::extend_locked(std::size_t n) const {
  while (numbers_.size() <= n) {
    // [k+1]_q = 1 + q [k]_q
    numbers_.push_back(Rational(1) + q_ * numbers_.back());
    factorials_.push_back(factorials_.back() * numbers_.back());
  }
}

Rational QContext::q_number(long a) const {
  if (a < 0) return q_number_uncached(a);
  std::lock_guard lock(mu_);
  extend_locked(static_cast<std::size_t>(a));
  return numbers_[static_cast<std::size_t>(a)];
}

Rational QContext::q_factorial(int n) const {
  if (n < 0) throw std::invalid_argument("q_factorial of negative n");
  std::lock_guard lock(mu_);
  extend_locked(static_cast<std::size_t>(n));
  return factorials_[static_cast<std::size_t>(n)];
}

Rational QContext::q_double_factorial(int n) const {
  if (n < 0) throw std::invalid_argument("q_double_factorial of negative n");
  Rational acc(1);
  for (int j = 1; j <= n; ++j) acc *= q_number(2L * j);
  return acc;
}

Rational QContext::q_binomial(int n, int k) const {
  if (n < 0) throw std::invalid_argument("q_binomial with negative n");
  if (k < 0 || k > n) return Rational(0);
  return q_factorial(n) / (q_factorial(k) * q_factorial(n - k));
}

Rational QContext::q_multinomial(int n, std::span<const int> parts) const {
  const long total = std::accumulate(parts.begin(), parts.end(), 0L);
  if (total != n) {
    throw std::invalid_argument("q_multinomial parts sum to " + std::to_string(total) + ", expected " +
                                std::to_string(n));
  }
  Rational denom(1);
  for (int p : parts) {
    if (p < 0) throw std::invalid_argument("q_multinomial with negative part");
    denom *= q_factorial(p);
  }
  return q_factorial(n) / denom;
}

Rational QContext::q_shifted_factorial(const Rational& a, int n) const {
  if (n < 0) throw std::invalid_argument("q_shifted_factorial with negative n");
  Rational acc(1);
  for (int j = 0; j < n; ++j) acc *= Rational(1) - q_power(j) * a;
  return acc;
}

Rational QContext::q_shifted_factorial(const Rational&, InfiniteLength) const {
  throw UnsupportedOperation("(a;q)_infinity has no exact rational value; only finite lengths are supported");
}

}  // namespace qumbral
