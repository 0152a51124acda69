#pragma once

#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qumbral/rational.hpp"

namespace qumbral {

class QContext;
using Ctx = std::shared_ptr<const QContext>;

/// Raised for operations the engine refuses on principle, such as the
/// infinite q-shifted product.
class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Tag for (a;q)_infinity.
struct InfiniteLength {};
inline constexpr InfiniteLength kInfiniteLength{};

/// The base q, fixed for the lifetime of the context.
///
/// Either 0 < q < 1, or the classical limit q = 1 in which [a]_q := a.
/// Contexts are shared through `Ctx`; memo tables are guarded by a mutex so
/// any number of threads may query the same context.
class QContext {
 public:
  /// q must satisfy 0 < q <= 1; q == 1 selects the classical limit.
  static Ctx make(const Rational& q);
  static Ctx classical() { return make(Rational(1)); }
  /// Accepts "1" or any rational literal in (0, 1).
  static Ctx parse(std::string_view token) { return make(Rational::parse(token)); }

  const Rational& q() const { return q_; }
  bool is_classical() const { return classical_; }

  /// q^a for any integer a.
  Rational q_power(long a) const;

  /// [a]_q = (1 - q^a)/(1 - q), or a in the classical limit.
  Rational q_number(long a) const;
  /// [n]_q! with [0]_q! = 1.
  Rational q_factorial(int n) const;
  /// [2n]_q [2n-2]_q ... [2]_q, empty product 1.
  Rational q_double_factorial(int n) const;
  /// q-binomial coefficient; zero outside 0 <= k <= n.
  Rational q_binomial(int n, int k) const;
  /// [n]_q! / prod [i_j]_q!. The parts must sum to n.
  Rational q_multinomial(int n, std::span<const int> parts) const;
  /// (a;q)_n = prod_{j<n} (1 - q^j a).
  Rational q_shifted_factorial(const Rational& a, int n) const;
  [[noreturn]] Rational q_shifted_factorial(const Rational& a, InfiniteLength) const;

  /// Two contexts describe the same q.
  bool same_q(const QContext& other) const { return q_ == other.q_; }

  std::string label() const { return q_.to_string(); }

 private:
  explicit QContext(Rational q);

  Rational q_number_uncached(long a) const;
  void extend_locked(std::size_t n) const;

  Rational q_;
  bool classical_ = false;

  mutable std::mutex mu_;
  mutable std::vector<Rational> numbers_;     // [0]_q, [1]_q, ...
  mutable std::vector<Rational> factorials_;  // same length as numbers_
};

}  // namespace qumbral
