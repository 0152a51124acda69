#include "qumbral/appell.hpp"

#include <algorithm>
#include <charconv>

namespace qumbral {

struct AppellFamily::Cache {
  std::mutex mu;
  std::optional<Series> det;
  std::vector<Rational> numbers;
  std::vector<Poly> polys;
};

AppellFamily::AppellFamily(std::string name, Ctx ctx, Generator det, int det_valuation)
    : name_(std::move(name)),
      ctx_(std::move(ctx)),
      det_(std::move(det)),
      det_valuation_(det_valuation),
      cache_(std::make_shared<Cache>()) {}

Series AppellFamily::det_series(int n_max) const {
  {
    std::lock_guard lock(cache_->mu);
    if (cache_->det && cache_->det->truncation() >= n_max) return cache_->det->truncated(n_max);
  }
  // Grow geometrically so repeated small extensions stay cheap.
  int want = n_max;
  {
    std::lock_guard lock(cache_->mu);
    if (cache_->det) want = std::max(n_max, cache_->det->truncation() + 4);
  }
  Series fresh = det_(ctx_, want);
  if (fresh.truncation() < n_max) {
    throw InternalConsistencyError(name_ + ": generator returned truncation " + std::to_string(fresh.truncation()) +
                                   " for request " + std::to_string(n_max));
  }
  std::lock_guard lock(cache_->mu);
  if (!cache_->det || cache_->det->truncation() < fresh.truncation()) cache_->det = fresh;
  return fresh.truncated(n_max);
}

Series AppellFamily::g_series(int n_max) const {
  const Series a = det_series(n_max + 2 * det_valuation_);
  return series_invert(a).truncated(n_max);
}

Rational AppellFamily::number(int n) const {
  if (n < 0) throw std::invalid_argument("family number with negative index");
  {
    std::lock_guard lock(cache_->mu);
    if (cache_->numbers.size() > static_cast<std::size_t>(n)) return cache_->numbers[static_cast<std::size_t>(n)];
  }
  const Series a = det_series(n);
  std::vector<Rational> fresh;
  for (int k = 0; k <= n; ++k) fresh.push_back(ctx_->q_factorial(k) * a.coeff(k));
  std::lock_guard lock(cache_->mu);
  if (cache_->numbers.size() < fresh.size()) cache_->numbers = std::move(fresh);
  return cache_->numbers[static_cast<std::size_t>(n)];
}

Poly AppellFamily::polynomial_by_convolution(int n) const {
  std::vector<Rational> c(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = ctx_->q_binomial(n, k) * number(n - k);
  return Poly(ctx_, std::move(c));
}

Poly AppellFamily::polynomial_by_operator(int n) const {
  return operator_apply(Functional(det_series(n)), Poly::monomial(ctx_, n));
}

Poly AppellFamily::polynomial(int n) const {
  if (n < 0) throw std::invalid_argument("family polynomial with negative index");
  {
    std::lock_guard lock(cache_->mu);
    if (cache_->polys.size() > static_cast<std::size_t>(n)) return cache_->polys[static_cast<std::size_t>(n)];
  }
  std::vector<Poly> fresh;
  {
    std::lock_guard lock(cache_->mu);
    fresh = cache_->polys;
  }
  for (int k = static_cast<int>(fresh.size()); k <= n; ++k) {
    Poly conv = polynomial_by_convolution(k);
    Poly op = polynomial_by_operator(k);
    if (!(conv == op)) {
      throw InternalConsistencyError(name_ + " polynomial " + std::to_string(k) + ": convolution gives " +
                                     conv.to_string() + " but operator route gives " + op.to_string());
    }
    fresh.push_back(std::move(conv));
  }
  std::lock_guard lock(cache_->mu);
  if (cache_->polys.size() < fresh.size()) cache_->polys = std::move(fresh);
  return cache_->polys[static_cast<std::size_t>(n)];
}

namespace {

// e_q(t) + c, known to t^N.
Series eq_plus(const Ctx& ctx, int n_max, long c) {
  return e_q_series(ctx, n_max) + Series::monomial(ctx, 0, Rational(c), n_max);
}

Series genocchi_det(const Ctx& ctx, int n_max) {
  // 1/(e_q+1) keeps the truncation of e_q; the factor t adds one.
  const int base = std::max(n_max - 1, 0);
  return (Rational(2) * series_invert(eq_plus(ctx, base, 1))).shifted(1);
}

}  // namespace

AppellFamily make_bernoulli(const Ctx& ctx) {
  auto gen = [](const Ctx& c, int n_max) {
    // (e_q - 1)/t is invertible and known to t^N when e_q is known to t^{N+1}.
    const Series quotient = (eq_plus(c, n_max + 1, -1)).shifted(-1);
    return series_invert(quotient);
  };
  return AppellFamily("bernoulli", ctx, gen, 0);
}

AppellFamily make_euler(const Ctx& ctx) {
  auto gen = [](const Ctx& c, int n_max) { return Rational(2) * series_invert(eq_plus(c, std::max(n_max, 0), 1)); };
  return AppellFamily("euler", ctx, gen, 0);
}

AppellFamily make_genocchi(const Ctx& ctx) { return AppellFamily("genocchi", ctx, genocchi_det, 1); }

AppellFamily make_genocchi_order(const Ctx& ctx, int m) {
  if (m < 1) throw std::invalid_argument("Genocchi order must be >= 1");
  if (m == 1) return make_genocchi(ctx);
  auto gen = [m](const Ctx& c, int n_max) {
    // A valuation-1 series known to t^K has its m-th power known to t^{K+m-1}.
    const int base = std::max(n_max - m + 1, 1);
    return series_pow(genocchi_det(c, base), m);
  };
  return AppellFamily("genocchi^" + std::to_string(m), ctx, gen, m);
}

AppellFamily make_monomial_family(const Ctx& ctx) {
  auto gen = [](const Ctx& c, int n_max) { return Series::monomial(c, 0, Rational(1), std::max(n_max, 0)); };
  return AppellFamily("genocchi^0", ctx, gen, 0);
}

AppellFamily make_family(const Ctx& ctx, std::string_view name) {
  if (name == "bernoulli") return make_bernoulli(ctx);
  if (name == "euler") return make_euler(ctx);
  if (name == "genocchi") return make_genocchi(ctx);
  constexpr std::string_view prefix = "genocchi^";
  if (name.substr(0, prefix.size()) == prefix) {
    const std::string_view digits = name.substr(prefix.size());
    int m = -1;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), m);
    if (ec == std::errc() && ptr == digits.data() + digits.size()) {
      if (m == 0) return make_monomial_family(ctx);
      if (m >= 1) return make_genocchi_order(ctx, m);
    }
  }
  throw std::invalid_argument("unknown family '" + std::string(name) +
                              "' (expected bernoulli, euler, genocchi or genocchi^m)");
}

AppellFamily FamilyBook::get(const std::string& name) {
  std::lock_guard lock(mu_);
  auto it = families_.find(name);
  if (it == families_.end()) it = families_.emplace(name, make_family(ctx_, name)).first;
  return it->second;
}

AuditVerdict check_derivative_property(const AppellFamily& fam, int n) {
  VerdictBuilder b("appell-derivative", fam.name());
  const Poly lhs = q_derivative_poly(fam.polynomial(n));
  const Poly rhs = n >= 1 ? fam.ctx()->q_number(n) * fam.polynomial(n - 1) : Poly(fam.ctx());
  b.record(fam.ctx()->q(), n, std::nullopt, lhs == rhs, lhs.to_string(), rhs.to_string());
  return b.finish();
}

Rational sheffer_pairing(const AppellFamily& fam, int n, int k) {
  const Series gtk = fam.g_series(std::max(n, 0)).shifted(k);
  return apply(Functional(gtk), fam.polynomial(n));
}

ExpansionResult expansion_coefficients(const AppellFamily& fam, const Poly& p) {
  if (fam.det_valuation() != 0) {
    throw std::domain_error(fam.name() +
                            " has a non-invertible determining series; use the shifted Genocchi bases instead");
  }
  const Ctx& ctx = fam.ctx();
  ExpansionResult out;
  const int deg = p.degree();
  const Series g = fam.g_series(std::max(deg, 0));
  Poly rebuilt(ctx);
  for (int k = 0; k <= deg; ++k) {
    const Rational c = apply(Functional(g.shifted(k)), p) / ctx->q_factorial(k);
    rebuilt = rebuilt + c * fam.polynomial(k);
    out.coeffs.push_back(c);
  }
  VerdictBuilder b("appell-polynomial-expansion", fam.name());
  b.record(ctx->q(), std::max(deg, 0), std::nullopt, rebuilt == p, p.to_string(), rebuilt.to_string());
  out.verdict = b.finish();
  return out;
}

AuditVerdict check_functional_expansion(const AppellFamily& fam, const Functional& h, int n_max) {
  const Ctx& ctx = fam.ctx();
  if (h.series().truncation() < n_max) {
    throw TruncationError("check_functional_expansion: h known to t^" + std::to_string(h.series().truncation()) +
                          ", need t^" + std::to_string(n_max));
  }
  const Series g = fam.g_series(n_max);
  Series sum = Series::zero(ctx, n_max);
  for (int k = 0; k <= n_max; ++k) {
    const Rational c = apply(h, fam.polynomial(k)) / ctx->q_factorial(k);
    if (!c.is_zero()) sum = sum + c * g.shifted(k);
  }
  const Series lhs = h.series().truncated(n_max);
  const Series rhs = sum.truncated(std::min(sum.truncation(), n_max));
  VerdictBuilder b("appell-functional-expansion", fam.name());
  b.record(ctx->q(), n_max, std::nullopt, lhs.agrees_with(rhs) && rhs.truncation() >= n_max, lhs.to_string(),
           rhs.to_string());
  return b.finish();
}

Poly recurrence_rhs(const AppellFamily& fam, const Series& bracket, const Rational& scale, int n,
                    BracketReading reading) {
  const Ctx& ctx = fam.ctx();
  const Rational& q = ctx->q();
  const Poly an = fam.polynomial(n);
  if (reading == BracketReading::operator_action) {
    return scale * operator_apply(Functional(bracket), an) + q * an.times_x();
  }
  // Coefficient of t^n/[n]! in [R(t) + qx] * sum_j q^j A_j(x) t^j/[j]!.
  Poly out = ctx->q_power(n + 1) * an.times_x();
  const Rational nf = ctx->q_factorial(n);
  for (int k = std::min(bracket.valuation(), 0); k <= n; ++k) {
    const Rational r = bracket.coeff(k);
    if (r.is_zero()) continue;
    const int j = n - k;
    out = out + (r * nf * ctx->q_power(j) / ctx->q_factorial(j)) * fam.polynomial(j);
  }
  return out;
}

std::vector<AuditVerdict> check_recurrence(const AppellFamily& fam, int n) {
  const Ctx& ctx = fam.ctx();
  const Rational& q = ctx->q();
  const int v = fam.det_valuation();
  const int trunc = n + 2 * v + 4;

  const Series a = fam.det_series(trunc);
  const Series g = fam.g_series(trunc);
  // D_q A(t) / A(qt)
  const Series proof_bracket = q_derivative_series(a) * series_invert(scale_argument(a, q));
  // -D_q g(t) / g(qt)
  const Series statement_bracket = -(q_derivative_series(g) * series_invert(scale_argument(g, q)));

  const Poly lhs = fam.polynomial(n + 1).scale_argument(q);
  const Rational qn = ctx->q_power(n);

  std::vector<AuditVerdict> out;
  const struct {
    const char* variant;
    const Series* bracket;
    BracketReading reading;
  } forms[] = {
      {"statement", &statement_bracket, BracketReading::generating},
      {"proof", &proof_bracket, BracketReading::generating},
      {"statement-operator", &statement_bracket, BracketReading::operator_action},
      {"proof-operator", &proof_bracket, BracketReading::operator_action},
  };
  for (const auto& f : forms) {
    const Poly rhs = recurrence_rhs(fam, *f.bracket, qn, n, f.reading);
    VerdictBuilder b("recurrence", std::string(f.variant));
    b.record(q, n, std::nullopt, lhs == rhs, lhs.to_string(), rhs.to_string(), "family=" + fam.name());
    out.push_back(b.finish());
  }
  return out;
}

}  // namespace qumbral
