#pragma once

#include <random>
#include <vector>

#include "qumbral/poly.hpp"
#include "qumbral/series.hpp"

namespace testing {

using qumbral::Ctx;
using qumbral::Poly;
using qumbral::QContext;
using qumbral::Rational;
using qumbral::Series;

inline std::vector<Ctx> grid() {
  return {QContext::make(Rational(1, 3)), QContext::make(Rational(1, 2)), QContext::make(Rational(2, 3)),
          QContext::make(Rational(9, 10)), QContext::make(Rational(1))};
}

inline Rational random_rational(std::mt19937_64& rng, long span = 9, long max_den = 7) {
  std::uniform_int_distribution<long> num(-span, span);
  std::uniform_int_distribution<long> den(1, max_den);
  return Rational(num(rng), den(rng));
}

inline Rational random_nonzero(std::mt19937_64& rng) {
  Rational r = random_rational(rng);
  while (r.is_zero()) r = random_rational(rng);
  return r;
}

inline Poly random_poly(const Ctx& ctx, std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::vector<Rational> c;
  const int d = deg(rng);
  for (int i = 0; i < d; ++i) c.push_back(random_rational(rng));
  c.push_back(random_nonzero(rng));
  return Poly(ctx, std::move(c));
}

/// Nonzero leading term at t^valuation, known to t^truncation.
inline Series random_series(const Ctx& ctx, std::mt19937_64& rng, int truncation, int valuation = 0) {
  std::vector<Rational> c{random_nonzero(rng)};
  for (int i = valuation + 1; i <= truncation; ++i) c.push_back(random_rational(rng));
  return Series::from_coeffs(ctx, valuation, std::move(c), truncation);
}

/// [n]_q! as a plain product of (1 - q^k)/(1 - q), independent of the context caches.
inline Rational factorial_by_product(const Rational& q, int n) {
  Rational acc(1);
  for (int k = 1; k <= n; ++k) {
    if (q == Rational(1)) {
      acc *= Rational(k);
    } else {
      acc *= (Rational(1) - q.pow(k)) / (Rational(1) - q);
    }
  }
  return acc;
}

}  // namespace testing
