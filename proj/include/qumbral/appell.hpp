#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qumbral/audit.hpp"
#include "qumbral/poly.hpp"
#include "qumbral/series.hpp"
#include "qumbral/umbral.hpp"

namespace qumbral {

/// Two routes that must agree did not. Indicates a bug in the engine, never
/// a property of the input.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A q-Appell family A_n(x), built from its determining series
/// A(t) = sum A_n t^n/[n]_q!, with A(t) e_q(xt) = sum A_n(x) t^n/[n]_q!.
///
/// Copies share one cache of numbers, polynomials and the longest determining
/// series computed so far; the cache is mutex guarded.
class AppellFamily {
 public:
  /// Produces the determining series known to at least t^N.
  using Generator = std::function<Series(const Ctx&, int)>;

  AppellFamily(std::string name, Ctx ctx, Generator det, int det_valuation);

  const std::string& name() const { return name_; }
  const Ctx& ctx() const { return ctx_; }
  int det_valuation() const { return det_valuation_; }

  /// A(t) known exactly to t^N.
  Series det_series(int n_max) const;
  /// g(t) = 1/A(t) known exactly to t^N (Laurent when det_valuation > 0).
  Series g_series(int n_max) const;

  /// A_n = [n]_q! [t^n] A(t).
  Rational number(int n) const;
  /// A_n(x), built by q-binomial convolution of the numbers and checked
  /// against the operator route A(t) x^n. Throws InternalConsistencyError if
  /// the two differ.
  Poly polynomial(int n) const;

  Poly polynomial_by_convolution(int n) const;
  Poly polynomial_by_operator(int n) const;

 private:
  struct Cache;

  std::string name_;
  Ctx ctx_;
  Generator det_;
  int det_valuation_ = 0;
  std::shared_ptr<Cache> cache_;
};

/// t/(e_q(t) - 1).
AppellFamily make_bernoulli(const Ctx& ctx);
/// 2/(e_q(t) + 1).
AppellFamily make_euler(const Ctx& ctx);
/// 2t/(e_q(t) + 1).
AppellFamily make_genocchi(const Ctx& ctx);
/// (2t/(e_q(t) + 1))^m, m >= 1. The name is "genocchi^m".
AppellFamily make_genocchi_order(const Ctx& ctx, int m);
/// Determining series 1; A_n(x) = x^n. Used as the order-0 Genocchi family.
AppellFamily make_monomial_family(const Ctx& ctx);

/// Looks up "bernoulli", "euler", "genocchi" or "genocchi^m".
AppellFamily make_family(const Ctx& ctx, std::string_view name);

inline Rational numbers(const AppellFamily& fam, int n) { return fam.number(n); }
inline Poly polynomial(const AppellFamily& fam, int n) { return fam.polynomial(n); }

/// Lazily built families for one q, safe to share between threads.
class FamilyBook {
 public:
  explicit FamilyBook(Ctx ctx) : ctx_(std::move(ctx)) {}
  const Ctx& ctx() const { return ctx_; }
  /// Same names as make_family; "genocchi^0" is the monomial family.
  AppellFamily get(const std::string& name);
  AppellFamily genocchi_order(int m) { return get(m == 1 ? "genocchi" : "genocchi^" + std::to_string(m)); }

 private:
  Ctx ctx_;
  std::mutex mu_;
  std::map<std::string, AppellFamily> families_;
};

/// D_q A_n = [n]_q A_{n-1}.
AuditVerdict check_derivative_property(const AppellFamily& fam, int n);

/// <g(t) t^k | A_n(x)>, g = 1/A(t); Laurent terms of g never pair.
Rational sheffer_pairing(const AppellFamily& fam, int n, int k);

struct ExpansionResult {
  std::vector<Rational> coeffs;  // coefficient of A_k for k = 0..deg p
  AuditVerdict verdict;          // reconstruction check
};
/// c_k = <g(t) t^k | p>/[k]_q!, verified by rebuilding p = sum c_k A_k.
/// Only for invertible determining series; Genocchi-type families go
/// through the shifted bases in genocchi.hpp (throws std::domain_error).
ExpansionResult expansion_coefficients(const AppellFamily& fam, const Poly& p);

/// h(t) = sum_k <h|A_k>/[k]_q! g(t) t^k, compared up to t^N.
AuditVerdict check_functional_expansion(const AppellFamily& fam, const Functional& h, int n_max);

/// How a bracket series [R(t) + qx] acts on A_n(x) in a recurrence.
enum class BracketReading {
  /// R multiplies the argument-scaled generating function
  /// A(qt) e_q(qxt) = sum q^j A_j(x) t^j/[j]_q!; the printed power of q is
  /// absorbed into the weights q^{n-k}.
  generating,
  /// R acts as an umbral operator on A_n(x), scaled by the printed power of q.
  operator_action,
};

/// Right-hand side of A_{n+1}(qx) = [qx + scale * R(t)] A_n(x) under the
/// given reading. `scale` is ignored by the generating reading.
Poly recurrence_rhs(const AppellFamily& fam, const Series& bracket, const Rational& scale, int n,
                    BracketReading reading);

/// Evaluates both printed forms of the recurrence formula:
///   statement: A_{n+1}(qx) = [qx - q^n D_q g(t)/g(qt)] A_n(x)
///   proof:     A_{n+1}(qx) = [q^n D_q A(t)/A(qt) + qx] A_n(x)
/// each under the generating reading (variants "statement", "proof") and
/// the operator reading ("statement-operator", "proof-operator").
std::vector<AuditVerdict> check_recurrence(const AppellFamily& fam, int n);

}  // namespace qumbral
