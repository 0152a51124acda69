#pragma once

#include <span>
#include <utility>
#include <vector>

#include "qumbral/poly.hpp"
#include "qumbral/series.hpp"

namespace qumbral {

/// A series read as a linear functional on polynomials:
/// <f | x^n> = [n]_q! * [t^n] f. Negative powers never pair.
class Functional {
 public:
  explicit Functional(Series s) : s_(std::move(s)) {}
  const Series& series() const { return s_; }
  const Ctx& ctx() const { return s_.ctx(); }

 private:
  Series s_;
};

/// <f | p>. Throws TruncationError if f is not known up to t^deg(p).
Rational apply(const Functional& f, const Poly& p);

/// f(t) acting on p(x) as an operator:
///   x^n -> sum_k [n]_q!/[n-k]_q! a_k x^{n-k},  a_k = [t^k] f,  k <= n.
/// A negative power t^{-j} acts as the j-fold right inverse of D_q,
/// x^n -> [n]_q!/[n+j]_q! x^{n+j}.
Poly operator_apply(const Functional& f, const Poly& p);

/// Both sides of <f g | p> = <f | g p>.
std::pair<Rational, Rational> adjoint_sides(const Functional& f, const Functional& g, const Poly& p);
bool check_adjoint(const Functional& f, const Functional& g, const Poly& p);

/// Both sides of <f g | x^n> = sum_k [n,k]_q <f|x^k><g|x^{n-k}>.
std::pair<Rational, Rational> pairing_convolution_sides(const Functional& f, const Functional& g, int n);
bool check_pairing_convolution(const Functional& f, const Functional& g, int n);

/// Both sides of the k-fold multinomial product rule for <f_1...f_k | x^n>.
std::pair<Rational, Rational> pairing_multinomial_sides(std::span<const Functional> fs, int n);
bool check_pairing_multinomial(std::span<const Functional> fs, int n);

/// sum_{k<=N} <f|x^k>/[k]_q! t^k.
Series expand_functional(const Functional& f, int n_max);
/// sum_k <t^k|p>/[k]_q! x^k.
Poly expand_polynomial(const Poly& p);

/// Calls `visit(parts)` for every composition of n into k nonnegative parts,
/// in lexicographic order.
template <typename Visit>
void for_each_composition(int n, int k, Visit&& visit) {
  if (k <= 0) {
    if (n == 0) visit(std::span<const int>{});
    return;
  }
  std::vector<int> parts(static_cast<std::size_t>(k), 0);
  auto rec = [&](auto&& self, int idx, int remaining) -> void {
    if (idx == k - 1) {
      parts[static_cast<std::size_t>(idx)] = remaining;
      visit(std::span<const int>(parts));
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      parts[static_cast<std::size_t>(idx)] = v;
      self(self, idx + 1, remaining - v);
    }
  };
  rec(rec, 0, n);
}

}  // namespace qumbral
