#include <chrono>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "qumbral/cli.hpp"
#include "qumbral/genocchi.hpp"
#include "qumbral/registry.hpp"

using namespace qumbral;
using nlohmann::json;

namespace {

std::vector<Ctx> grid() {
  std::vector<Ctx> out;
  for (const auto& q : AuditConfig::default_q_grid()) out.push_back(QContext::make(q));
  return out;
}

const char* const kFamilies[] = {"bernoulli", "euler", "genocchi", "genocchi^2", "genocchi^3"};

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 7);
  return Rational(num(rng), den(rng));
}

Poly random_poly(const Ctx& ctx, std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::vector<Rational> c;
  const int d = deg(rng);
  for (int i = 0; i <= d; ++i) c.push_back(random_rational(rng));
  if (c.back().is_zero()) c.back() = Rational(1);
  return Poly(ctx, std::move(c));
}

Series random_series(const Ctx& ctx, std::mt19937_64& rng, int truncation) {
  std::vector<Rational> c;
  for (int i = 0; i <= truncation; ++i) c.push_back(random_rational(rng));
  if (c.front().is_zero()) c.front() = Rational(1);
  return Series::from_coeffs(ctx, 0, std::move(c), truncation);
}

struct Criterion {
  int number;
  std::string title;
  bool pass = true;
  std::string note;

  void expect(bool ok, const std::string& what) {
    if (!ok && pass) note = what;
    pass = pass && ok;
  }
};

Criterion classical_limit() {
  Criterion c{1, "classical Bernoulli and Genocchi numbers at q=1"};
  const Ctx one = QContext::classical();
  const auto bern = make_bernoulli(one);
  const auto geno = make_genocchi(one);
  const Rational b[] = {Rational(1),     Rational(-1, 2), Rational(1, 6), Rational(0),    Rational(-1, 30),
                        Rational(0),     Rational(1, 42), Rational(0),    Rational(-1, 30)};
  const long g[] = {0, 1, -1, 0, 1, 0, -3, 0, 17};
  for (int n = 0; n <= 8; ++n) {
    c.expect(bern.number(n) == b[n], "B_" + std::to_string(n) + " = " + bern.number(n).to_string());
    c.expect(geno.number(n) == Rational(g[n]), "G_" + std::to_string(n) + " = " + geno.number(n).to_string());
    c.expect(geno.number(n) == Rational(2) * (Rational(1) - Rational(2).pow(n)) * bern.number(n),
             "G_n = 2(1-2^n)B_n at n=" + std::to_string(n));
  }
  return c;
}

Criterion appell_axiom() {
  Criterion c{2, "D_q A_n = [n]_q A_{n-1} for all families, n <= 12, grid q, m <= 3"};
  for (const auto& ctx : grid()) {
    for (const char* name : kFamilies) {
      const auto fam = make_family(ctx, name);
      for (int n = 0; n <= 12; ++n) {
        c.expect(check_derivative_property(fam, n).verified(),
                 std::string(name) + " q=" + ctx->label() + " n=" + std::to_string(n));
      }
    }
  }
  return c;
}

Criterion pairing_axioms() {
  Criterion c{3, "pairing axioms, evaluation functionals, product rules on random instances"};
  std::mt19937_64 rng(3);
  for (const auto& ctx : grid()) {
    const std::string at = " q=" + ctx->label();
    for (int n = 0; n <= 10; ++n) {
      for (int k = 0; k <= 10; ++k) {
        const Rational v = apply(Functional(Series::monomial(ctx, k, Rational(1), 10)), Poly::monomial(ctx, n));
        c.expect(v == (n == k ? ctx->q_factorial(n) : Rational(0)), "<t^k|x^n>" + at);
      }
    }
    const Rational zero(0);
    for (int i = 0; i < 30; ++i) {
      const Rational y = random_rational(rng);
      const Poly p = random_poly(ctx, rng, 8);
      const Series e = scale_argument(e_q_series(ctx, 8), y);
      const Series one = Series::monomial(ctx, 0, Rational(1), 8);
      c.expect(apply(Functional(e), p) == p.eval(y), "<e_q(yt)|p>" + at);
      c.expect(apply(Functional(e + one), p) == p.eval(y) + p.eval(zero), "<e_q(yt)+1|p>" + at);
      c.expect(apply(Functional(e - one), p) == p.eval(y) - p.eval(zero), "<e_q(yt)-1|p>" + at);
    }
    for (int i = 0; i < 30; ++i) {
      const Functional f(random_series(ctx, rng, 10));
      const Functional g(random_series(ctx, rng, 10));
      c.expect(check_adjoint(f, g, random_poly(ctx, rng, 8)), "<fg|p> = <f|gp>" + at);
      std::uniform_int_distribution<int> deg(0, 10);
      c.expect(check_pairing_convolution(f, g, deg(rng)), "product pairing convolution" + at);
      const std::vector<Functional> fs{f, g, Functional(random_series(ctx, rng, 10))};
      c.expect(check_pairing_multinomial(fs, deg(rng)), "multinomial pairing" + at);
    }
  }
  return c;
}

Criterion orthonormality() {
  Criterion c{4, "<g t^k|A_n> = [n]_q! delta for Bernoulli, Euler; Genocchi for n,k >= 1"};
  for (const auto& ctx : grid()) {
    const std::string at = " q=" + ctx->label();
    for (const char* name : {"bernoulli", "euler", "genocchi"}) {
      const auto fam = make_family(ctx, name);
      const int lo = std::string(name) == "genocchi" ? 1 : 0;
      for (int n = lo; n <= 10; ++n) {
        for (int k = lo; k <= 10; ++k) {
          c.expect(sheffer_pairing(fam, n, k) == (n == k ? ctx->q_factorial(n) : Rational(0)),
                   std::string(name) + at + " n=" + std::to_string(n) + " k=" + std::to_string(k));
        }
      }
    }
    const Rational g00 = sheffer_pairing(make_genocchi(ctx), 0, 0);
    c.expect(g00 == Rational(0) && ctx->q_factorial(0) == Rational(1),
             "Genocchi n=k=0 gave " + g00.to_string() + " instead of the expected failure 0 vs 1" + at);
  }
  if (c.pass) c.note = "Genocchi n=k=0: 0 vs 1 on every q";
  return c;
}

Criterion expansions() {
  Criterion c{5, "expansion reconstructs 50 random polynomials in Bernoulli, Euler and shifted Genocchi bases"};
  std::mt19937_64 rng(5);
  for (const auto& ctx : grid()) {
    const auto bern = make_bernoulli(ctx);
    const auto euler = make_euler(ctx);
    const auto geno = make_genocchi(ctx);
    for (int i = 0; i < 50; ++i) {
      const Poly p = random_poly(ctx, rng, 8);
      for (const auto* fam : {&bern, &euler}) {
        const auto r = expansion_coefficients(*fam, p);
        Poly rebuilt(ctx);
        for (std::size_t k = 0; k < r.coeffs.size(); ++k) {
          rebuilt = rebuilt + r.coeffs[k] * fam->polynomial(static_cast<int>(k));
        }
        c.expect(rebuilt == p && r.verdict.verified(), fam->name() + " q=" + ctx->label() + " p=" + p.to_string());
      }
      c.expect(from_genocchi_basis(geno, to_genocchi_basis(geno, p)) == p,
               "genocchi q=" + ctx->label() + " p=" + p.to_string());
    }
  }
  return c;
}

Criterion recurrence() {
  Criterion c{6, "recurrence: derived form verified; stated form verdict definitive and identical across grid q"};
  std::vector<std::string> per_q;
  for (const char* name : {"bernoulli", "euler"}) {
    std::vector<AuditVerdict> statement;
    for (const auto& ctx : grid()) {
      const auto fam = make_family(ctx, name);
      for (int n = 0; n <= 8; ++n) {
        for (const auto& v : check_recurrence(fam, n)) {
          if (v.variant == "proof") {
            c.expect(v.verified(), std::string(name) + " derived form q=" + ctx->label() + " n=" + std::to_string(n));
          }
          if (v.variant == "statement") statement.push_back(v);
        }
      }
    }
    VerdictBuilder merged("recurrence", std::string("statement"));
    for (const auto& v : statement) merged.absorb(v);
    const AuditVerdict v = merged.finish();
    c.expect(v.verified() || v.counterexample.has_value(), std::string(name) + " stated form lacks a counterexample");
    std::string cols;
    for (const auto& s : v.per_q) cols += " " + s.q.to_string() + ":" + std::string(to_string(s.status));
    per_q.push_back(std::string(name) + cols);
    c.expect(v.stable(), "stated form per-q verdicts differ (" + std::string(name) + cols + ")");
  }
  if (c.pass) c.note = per_q.front();
  return c;
}

Criterion higher_order() {
  Criterion c{7, "multinomial G^[m]_n equals the series power, n <= 8, m <= 3; zero for n < m"};
  for (const auto& ctx : grid()) {
    const auto geno = make_genocchi(ctx);
    for (int m = 1; m <= 3; ++m) {
      const auto gm = m == 1 ? geno : make_genocchi_order(ctx, m);
      for (int n = 0; n <= 8; ++n) {
        const auto s = higher_order_number_sides(geno, gm, n);
        const std::string at = " q=" + ctx->label() + " m=" + std::to_string(m) + " n=" + std::to_string(n);
        c.expect(s.series_value == s.multinomial_value, "sides differ" + at);
        if (n < m) c.expect(s.series_value.is_zero(), "nonzero below the order" + at);
      }
    }
  }
  return c;
}

const json* find_verdict(const json& reports, const std::string& id, const json& variant) {
  for (const auto& r : reports) {
    if (r["identity"] != id) continue;
    for (const auto& v : r["verdicts"]) {
      if (v["variant"] == variant) return &v;
    }
  }
  return nullptr;
}

Criterion audit_all() {
  Criterion c{8, "audit --all: stability reported, known inconsistencies falsified with counterexamples"};
  std::ostringstream json_out;
  std::ostringstream err;
  const int code = cli::run(std::vector<std::string>{"audit", "--all", "--format", "json"}, json_out, err);
  c.expect(code == cli::ok, "audit exited with " + std::to_string(code) + ": " + err.str());
  if (code != cli::ok) return c;
  const json reports = json::parse(json_out.str());
  c.expect(reports.size() == identity_registry().size(), "not every registered identity was audited");
  const std::size_t grid_size = AuditConfig::default_q_grid().size();
  std::vector<std::string> unstable;
  for (const auto& r : reports) {
    bool all_stable = true;
    for (const auto& v : r["verdicts"]) {
      c.expect(v["per_q"].size() == grid_size, r["identity"].get<std::string>() + " misses grid q values");
      bool same = true;
      for (const auto& s : v["per_q"]) same = same && s["status"] == v["per_q"][0]["status"];
      c.expect(same == v["stable"].get<bool>(), r["identity"].get<std::string>() + " misreports stability");
      all_stable = all_stable && same;
      if (v["status"] == "falsified") {
        c.expect(v["counterexample"].is_object(), r["identity"].get<std::string>() + " falsified without payload");
      }
    }
    c.expect(all_stable == r["stable"].get<bool>(), r["identity"].get<std::string>() + " misreports stability");
    if (!all_stable) unstable.push_back(r["identity"]);
  }
  struct Finding {
    const char* id;
    json variant;
  };
  const Finding findings[] = {
      {"genocchi-g0-claim", nullptr}, {"genint-closed-form", "printed"}, {"xm1-binomial-expansion", nullptr}};
  std::string payloads;
  for (const auto& f : findings) {
    const json* v = find_verdict(reports, f.id, f.variant);
    c.expect(v != nullptr, std::string(f.id) + " missing");
    if (!v) continue;
    c.expect((*v)["status"] == "falsified", std::string(f.id) + " not falsified");
    const json& cx = (*v)["counterexample"];
    c.expect(cx.is_object() && !cx["lhs"].get<std::string>().empty() && !cx["rhs"].get<std::string>().empty(),
             std::string(f.id) + " lacks an exact counterexample");
    if (cx.is_object()) {
      payloads += std::string(" ") + f.id + "{q=" + cx["q"].get<std::string>() + " n=" + std::to_string(cx["n"].get<int>()) +
                  " " + cx["lhs"].get<std::string>() + " vs " + cx["rhs"].get<std::string>() + "}";
    }
  }
  const json* genint = find_verdict(reports, "genint-closed-form", "printed");
  if (genint && (*genint)["counterexample"].is_object()) {
    c.expect((*genint)["counterexample"]["detail"] == "p=1", "genint counterexample is not p=1");
  }
  std::string listed;
  for (const auto& id : unstable) listed += (listed.empty() ? "" : ",") + id;
  c.note = "unstable across q: " + (listed.empty() ? std::string("none") : listed) + ";" + payloads;
  return c;
}

Criterion kernel_consistency() {
  Criterion c{9, "convolution and operator constructions agree, n <= 12; series inversion round trips"};
  for (const auto& ctx : grid()) {
    for (const char* name : kFamilies) {
      const auto fam = make_family(ctx, name);
      for (int n = 0; n <= 12; ++n) {
        c.expect(fam.polynomial_by_convolution(n) == fam.polynomial_by_operator(n),
                 std::string(name) + " q=" + ctx->label() + " n=" + std::to_string(n));
      }
    }
  }
  std::mt19937_64 rng(9);
  const auto ctxs = grid();
  for (int i = 0; i < 50; ++i) {
    const Ctx& ctx = ctxs[static_cast<std::size_t>(i) % ctxs.size()];
    const Series f = random_series(ctx, rng, 16);
    const Series prod = f * series_invert(f);
    c.expect(prod.truncation() == 16 && prod.agrees_with(Series::monomial(ctx, 0, Rational(1), 16)),
             "f * f^-1 != 1 q=" + ctx->label());
  }
  return c;
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  using Check = Criterion (*)();
  const Check checks[] = {classical_limit, appell_axiom, pairing_axioms, orthonormality, expansions,
                          recurrence,      higher_order, audit_all,      kernel_consistency};
  int failures = 0;
  for (const Check check : checks) {
    const Criterion c = check();
    std::cout << (c.pass ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.title;
    if (!c.note.empty()) std::cout << " [" << c.note << "]";
    std::cout << std::endl;
    failures += c.pass ? 0 : 1;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << " in "
            << secs << " s\n";
  return failures == 0 ? 0 : 1;
}
