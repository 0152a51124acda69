#include "qumbral/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "qumbral/genocchi.hpp"
#include "qumbral/registry.hpp"

namespace qumbral::cli {

using json = nlohmann::ordered_json;

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<Rational> parse_grid(const std::string& text) {
  std::vector<Rational> grid;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const Rational q = Rational::parse(token);
    QContext::make(q);
    if (std::find(grid.begin(), grid.end(), q) == grid.end()) grid.push_back(q);
  }
  if (grid.empty()) throw UsageError("empty q grid");
  return grid;
}

std::string family_name(const std::string& family, int m) {
  if (m <= 0) return family;
  if (family != "genocchi") throw UsageError("--m applies to the genocchi family only");
  return m == 1 ? "genocchi" : "genocchi^" + std::to_string(m);
}

json rational_list(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(r.to_string());
  return out;
}

json opt_int(std::optional<int> v) { return v ? json(*v) : json(nullptr); }

json verdict_json(const AuditVerdict& v) {
  json grid = json::array();
  for (const auto& c : v.grid) grid.push_back({{"q", c.q.to_string()}, {"n", c.n}, {"m", opt_int(c.m)}});
  json per_q = json::array();
  for (const auto& s : v.per_q) per_q.push_back({{"q", s.q.to_string()}, {"status", std::string(to_string(s.status))}});
  json cx = nullptr;
  if (v.counterexample) {
    const Counterexample& c = *v.counterexample;
    cx = {{"q", c.q.to_string()}, {"n", c.n},     {"m", opt_int(c.m)},
          {"lhs", c.lhs},         {"rhs", c.rhs}, {"detail", c.detail}};
  }
  return {{"identity", v.identity},
          {"variant", v.variant ? json(*v.variant) : json(nullptr)},
          {"status", std::string(to_string(v.status))},
          {"stable", v.stable()},
          {"per_q", per_q},
          {"grid", grid},
          {"counterexample", cx}};
}

json report_json(const IdentityReport& r) {
  json verdicts = json::array();
  for (const auto& v : r.verdicts) verdicts.push_back(verdict_json(v));
  json resolved = json::array();
  for (const auto& s : r.resolved_variants) resolved.push_back(s);
  return {{"identity", r.id},
          {"description", r.description},
          {"status", std::string(to_string(r.status))},
          {"resolved_variants", resolved},
          {"stable", r.stable()},
          {"verdicts", verdicts}};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void render_audit(const std::vector<IdentityReport>& reports, const AuditConfig& cfg, const std::string& format,
                  std::ostream& os) {
  if (format == "json") {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(report_json(r));
    os << arr.dump(2) << "\n";
    return;
  }
  if (format == "csv") {
    os << "identity,variant,status,stable,cx_q,cx_n,cx_m,cx_lhs,cx_rhs,cx_detail\n";
    for (const auto& r : reports) {
      for (const auto& v : r.verdicts) {
        os << csv_field(v.identity) << "," << csv_field(v.variant.value_or("")) << "," << to_string(v.status) << ","
           << (v.stable() ? "true" : "false");
        if (v.counterexample) {
          const Counterexample& c = *v.counterexample;
          os << "," << c.q << "," << c.n << "," << (c.m ? std::to_string(*c.m) : "") << "," << csv_field(c.lhs) << ","
             << csv_field(c.rhs) << "," << csv_field(c.detail);
        } else {
          os << ",,,,,,";
        }
        os << "\n";
      }
    }
    return;
  }

  os << "q grid:";
  for (const auto& q : cfg.q_grid) os << " " << q;
  os << "  nmax " << cfg.nmax << "  mmax " << cfg.mmax << "  truncation " << cfg.truncation() << "\n\n";
  int counts[3] = {0, 0, 0};
  std::vector<std::string> unstable;
  for (const auto& r : reports) {
    ++counts[static_cast<int>(r.status)];
    if (!r.stable()) unstable.push_back(r.id);
    os << "[" << to_string(r.status) << "] " << r.id << ": " << r.description << "\n";
    if (r.status == Status::variant_resolved) {
      os << "    holds as:";
      for (const auto& s : r.resolved_variants) os << " " << s;
      os << "\n";
    }
    for (const auto& v : r.verdicts) {
      os << "    " << v.variant.value_or("as stated") << ": " << to_string(v.status);
      if (!v.stable()) {
        os << ", differs across q (";
        for (std::size_t i = 0; i < v.per_q.size(); ++i) {
          os << (i ? ", " : "") << v.per_q[i].q << " " << to_string(v.per_q[i].status);
        }
        os << ")";
      }
      os << "\n";
      if (v.counterexample) {
        const Counterexample& c = *v.counterexample;
        os << "      counterexample q=" << c.q << " n=" << c.n;
        if (c.m) os << " m=" << *c.m;
        if (!c.detail.empty()) os << " " << c.detail;
        os << "\n        lhs: " << c.lhs << "\n        rhs: " << c.rhs << "\n";
      }
    }
  }
  os << "\n"
     << reports.size() << " identities: " << counts[0] << " verified, " << counts[1] << " falsified, " << counts[2]
     << " variant-resolved\n";
  os << "unstable across q:";
  if (unstable.empty()) os << " none";
  for (const auto& id : unstable) os << " " << id;
  os << "\n";
}

void render_numbers(const AppellFamily& fam, int nmax, bool polys, const std::string& format, std::ostream& os) {
  if (format == "json") {
    json arr = json::array();
    for (int n = 0; n <= nmax; ++n) {
      if (polys) {
        arr.push_back({{"n", n}, {"coeffs", rational_list(fam.polynomial(n).coeffs())}});
      } else {
        arr.push_back({{"n", n}, {"value", fam.number(n).to_string()}});
      }
    }
    os << arr.dump(2) << "\n";
  } else if (format == "csv") {
    os << (polys ? "n,k,coeff\n" : "n,value\n");
    for (int n = 0; n <= nmax; ++n) {
      if (polys) {
        const auto& c = fam.polynomial(n).coeffs();
        for (std::size_t k = 0; k < c.size(); ++k) os << n << "," << k << "," << c[k] << "\n";
      } else {
        os << n << "," << fam.number(n) << "\n";
      }
    }
  } else {
    for (int n = 0; n <= nmax; ++n) {
      os << n << "  " << (polys ? fam.polynomial(n).to_string() : fam.number(n).to_string()) << "\n";
    }
  }
}

void render_expansion(const BasisExpansion& e, const std::string& symbol, const char* sep,
                      const std::string& format, std::ostream& os) {
  if (format == "json") {
    json formula = nullptr;
    if (e.formula) {
      formula = {{"offset", e.formula->offset},
                 {"coeffs", rational_list(e.formula->coeffs)},
                 {"reproduces_source", e.formula->reproduces_source}};
    }
    json out = {{"basis", std::string(to_string(e.basis))},
                {"order", e.order},
                {"offset", e.offset},
                {"coeffs", rational_list(e.coeffs)},
                {"formula", formula}};
    os << out.dump(2) << "\n";
    return;
  }
  if (format == "csv") {
    os << "index,coeff\n";
    for (std::size_t i = 0; i < e.coeffs.size(); ++i) os << e.offset + static_cast<int>(i) << "," << e.coeffs[i] << "\n";
    return;
  }
  os << "basis: " << to_string(e.basis) << "\noffset: " << e.offset << "\ncoeffs:";
  for (const auto& c : e.coeffs) os << " " << c;
  os << "\np =";
  bool any = false;
  for (std::size_t i = 0; i < e.coeffs.size(); ++i) {
    if (e.coeffs[i].is_zero()) continue;
    os << (any ? " + " : " ") << e.coeffs[i] << "*" << symbol << sep << e.offset + static_cast<int>(i);
    any = true;
  }
  if (!any) os << " 0";
  os << "\n";
  if (e.formula) {
    os << "coefficient formula from index " << e.formula->offset << ":";
    for (const auto& c : e.formula->coeffs) os << " " << c;
    os << "\ncoefficient formula reproduces p: " << (e.formula->reproduces_source ? "yes" : "no") << "\n";
  }
}

struct Output {
  std::string format = "text";
  std::string path;
};

void add_output(CLI::App* cmd, Output& o, std::vector<std::string> formats) {
  cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember(std::move(formats)));
  cmd->add_option("--output", o.path, "write to this file instead of stdout");
}

void emit(const Output& o, const std::string& text, std::ostream& out) {
  if (o.path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + o.path);
  f << text;
}

}  // namespace

std::vector<std::string> functional_names() {
  return {"eq",      "eq+1",   "eq-1",      "eq(y*t)",  "eq(y*t)+1", "eq(y*t)-1", "bern-det",
          "bern-g",  "euler-det", "euler-g", "geno-det", "geno-g",    "t^K"};
}

Functional named_functional(const Ctx& ctx, std::string_view name, const Rational& y, int n_max) {
  const auto one = [&] { return Series::monomial(ctx, 0, Rational(1), n_max); };
  const auto eq = [&] { return e_q_series(ctx, n_max); };
  const auto eqy = [&] { return scale_argument(e_q_series(ctx, n_max), y); };
  if (name == "eq") return Functional(eq());
  if (name == "eq+1") return Functional(eq() + one());
  if (name == "eq-1") return Functional(eq() - one());
  if (name == "eq(y*t)") return Functional(eqy());
  if (name == "eq(y*t)+1") return Functional(eqy() + one());
  if (name == "eq(y*t)-1") return Functional(eqy() - one());
  const auto family_series = [&](const char* fam, bool det) {
    const AppellFamily f = make_family(ctx, fam);
    return Functional(det ? f.det_series(n_max) : f.g_series(n_max));
  };
  if (name == "bern-det") return family_series("bernoulli", true);
  if (name == "bern-g") return family_series("bernoulli", false);
  if (name == "euler-det") return family_series("euler", true);
  if (name == "euler-g") return family_series("euler", false);
  if (name == "geno-det") return family_series("genocchi", true);
  if (name == "geno-g") return family_series("genocchi", false);
  if (name.size() > 2 && name.substr(0, 2) == "t^") {
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(std::string(name.substr(2)), &used);
      if (used != name.size() - 2) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw std::invalid_argument("bad power in functional '" + std::string(name) + "'");
    }
    return Functional(Series::monomial(ctx, k, Rational(1), std::max(n_max, k)));
  }
  throw std::invalid_argument("unknown functional '" + std::string(name) + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact q-umbral calculus: q-Appell tables, basis expansions and identity audits", "qumbral"};
  app.require_subcommand(1);

  // table / poly
  Output table_out;
  std::string table_family = "genocchi";
  std::string table_q = "1";
  int table_n = 10;
  int table_m = 0;
  bool want_polys = false;
  auto* table = app.add_subcommand("table", "numbers or polynomials of a family for n = 0..N");
  table->add_option("--family", table_family, "bernoulli, euler, genocchi or genocchi^m");
  table->add_option("--q", table_q, "q as p/r with 0 < q < 1, or 1");
  table->add_option("--n,--nmax", table_n, "largest index")->check(CLI::NonNegativeNumber);
  table->add_option("--m,--mmax", table_m, "order of the Genocchi family")->check(CLI::NonNegativeNumber);
  auto* numbers_flag = table->add_flag("--numbers", "print the numbers A_n (default)");
  table->add_flag("--polys", want_polys, "print the polynomials A_n(x)")->excludes(numbers_flag);
  add_output(table, table_out, {"text", "json", "csv"});

  Output poly_out;
  std::string poly_family = "genocchi";
  std::string poly_q = "1";
  int poly_n = 0;
  int poly_m = 0;
  auto* poly = app.add_subcommand("poly", "one polynomial A_n(x)");
  poly->add_option("--family", poly_family, "bernoulli, euler, genocchi or genocchi^m");
  poly->add_option("--q", poly_q, "q as p/r with 0 < q < 1, or 1");
  poly->add_option("--n", poly_n, "index")->required()->check(CLI::NonNegativeNumber);
  poly->add_option("--m,--mmax", poly_m, "order of the Genocchi family")->check(CLI::NonNegativeNumber);
  add_output(poly, poly_out, {"text", "json", "csv"});

  // expand
  Output expand_out;
  std::string basis = "genocchi";
  std::string expand_p;
  std::string expand_q = "1";
  auto* expand = app.add_subcommand("expand", "coordinates of a polynomial in a basis");
  expand->add_option("--basis", basis, "genocchi, genocchi^m, monomial or xm1");
  expand->add_option("--p", expand_p, "coefficients c0,c1,... in ascending powers")->required();
  expand->add_option("--q", expand_q, "q as p/r with 0 < q < 1, or 1");
  add_output(expand, expand_out, {"text", "json", "csv"});

  // functional
  Output fn_out;
  std::string fn_name;
  std::string fn_p;
  std::string fn_q = "1";
  std::string fn_y;
  int fn_margin = 4;
  auto* functional = app.add_subcommand("functional", "evaluate <f(t) | p(x)>");
  functional->add_option("--f", fn_name, "one of eq, eq+1, eq-1, eq(y*t), eq(y*t)+1, eq(y*t)-1, bern-det, bern-g, "
                                         "euler-det, euler-g, geno-det, geno-g, t^K")
      ->required();
  functional->add_option("--p", fn_p, "coefficients c0,c1,... in ascending powers")->required();
  functional->add_option("--q", fn_q, "q as p/r with 0 < q < 1, or 1");
  functional->add_option("--y", fn_y, "y for the eq(y*t) functionals");
  functional->add_option("--truncation-margin", fn_margin, "series terms beyond deg p")->check(CLI::NonNegativeNumber);
  add_output(functional, fn_out, {"text", "json", "csv"});

  // audit
  Output audit_out;
  AuditConfig cfg;
  std::string grid_text = "1/3,1/2,2/3,9/10,1";
  std::vector<std::string> identities;
  bool all = false;
  bool list = false;
  auto* audit = app.add_subcommand("audit", "check every registered identity on a q grid");
  auto* id_opt = audit->add_option("--identity", identities, "identity id, repeatable");
  audit->add_flag("--all", all, "every registered identity (default)")->excludes(id_opt);
  audit->add_flag("--list", list, "list identity ids and exit");
  audit->add_option("--q-grid,--q", grid_text, "comma separated q values");
  audit->add_option("--nmax,--n", cfg.nmax, "largest n")->check(CLI::NonNegativeNumber);
  audit->add_option("--mmax,--m", cfg.mmax, "largest Genocchi order")->check(CLI::PositiveNumber);
  audit->add_option("--truncation-margin", cfg.margin, "series terms beyond nmax + mmax")
      ->check(CLI::NonNegativeNumber);
  audit->add_option("--instances", cfg.instances, "random instances per property and q")
      ->check(CLI::NonNegativeNumber);
  audit->add_option("--seed", cfg.seed, "seed for random instances");
  audit->add_option("--threads", cfg.threads, "worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);
  add_output(audit, audit_out, {"text", "json", "csv"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? ok : usage_error;
  }

  try {
    std::ostringstream os;
    if (table->parsed()) {
      FamilyBook book(QContext::parse(table_q));
      render_numbers(book.get(family_name(table_family, table_m)), table_n, want_polys, table_out.format, os);
      emit(table_out, os.str(), out);
    } else if (poly->parsed()) {
      FamilyBook book(QContext::parse(poly_q));
      const std::string name = family_name(poly_family, poly_m);
      const Poly p = book.get(name).polynomial(poly_n);
      if (poly_out.format == "json") {
        json j = {{"family", name},
                  {"q", book.ctx()->q().to_string()},
                  {"n", poly_n},
                  {"degree", p.degree()},
                  {"coeffs", rational_list(p.coeffs())}};
        os << j.dump(2) << "\n";
      } else if (poly_out.format == "csv") {
        os << "k,coeff\n";
        for (std::size_t k = 0; k < p.coeffs().size(); ++k) os << k << "," << p.coeffs()[k] << "\n";
      } else {
        os << name << "_" << poly_n << "(x) = " << p.to_string() << "\n";
      }
      emit(poly_out, os.str(), out);
    } else if (expand->parsed()) {
      FamilyBook book(QContext::parse(expand_q));
      const Poly p = parse_poly(book.ctx(), expand_p);
      BasisExpansion e;
      Poly back(book.ctx());
      std::string symbol = "x";
      if (basis == "monomial" || basis == "xm1") {
        e = basis == "monomial" ? to_monomial_basis(p) : to_xminus1_basis(p);
        back = from_plain_basis(book.ctx(), e);
        symbol = basis == "monomial" ? "x" : "(x-1)";
      } else if (basis == "genocchi") {
        const AppellFamily gen = book.get("genocchi");
        e = to_genocchi_basis(gen, p);
        back = from_genocchi_basis(gen, e);
        symbol = "G";
      } else if (basis.rfind("genocchi^", 0) == 0) {
        const AppellFamily fam = book.get(basis);
        e = expand_in_order_m_basis(fam, p);
        back = from_order_m_basis(fam, e);
        symbol = "G^[" + std::to_string(fam.det_valuation()) + "]";
      } else {
        throw UsageError("unknown basis '" + basis + "'");
      }
      if (!(back == p)) {
        throw InternalConsistencyError("expansion does not rebuild p: got " + back.to_string());
      }
      render_expansion(e, symbol, symbol.back() == ')' || symbol == "x" ? "^" : "_", expand_out.format, os);
      emit(expand_out, os.str(), out);
    } else if (functional->parsed()) {
      const Ctx ctx = QContext::parse(fn_q);
      const Poly p = parse_poly(ctx, fn_p);
      const bool uses_y = fn_name.find("(y*t)") != std::string::npos;
      if (uses_y && fn_y.empty()) throw UsageError("--f " + fn_name + " needs --y");
      const Rational y = fn_y.empty() ? Rational(1) : Rational::parse(fn_y);
      const Rational value = apply(named_functional(ctx, fn_name, y, std::max(p.degree(), 0) + fn_margin), p);
      if (fn_out.format == "json") {
        json j = {{"f", fn_name}, {"q", ctx->q().to_string()}, {"p", rational_list(p.coeffs())}, {"value", value.to_string()}};
        if (uses_y) j["y"] = y.to_string();
        os << j.dump(2) << "\n";
      } else if (fn_out.format == "csv") {
        os << "value\n" << value << "\n";
      } else {
        os << value << "\n";
      }
      emit(fn_out, os.str(), out);
    } else if (audit->parsed()) {
      if (list) {
        for (const auto& spec : identity_registry()) os << spec.id << "  " << spec.description << "\n";
        emit(audit_out, os.str(), out);
        return ok;
      }
      cfg.q_grid = parse_grid(grid_text);
      for (const auto& id : identities) {
        if (!find_identity(id)) throw UsageError("unknown identity '" + id + "'");
      }
      const auto reports = run_audit(cfg, identities);
      render_audit(reports, cfg, audit_out.format, os);
      emit(audit_out, os.str(), out);
    }
  } catch (const InternalConsistencyError& e) {
    err << "internal invariant violated: " << e.what() << "\n";
    return internal_error;
  } catch (const TruncationError& e) {
    err << "internal invariant violated: " << e.what() << "\n";
    return internal_error;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return internal_error;
  }
  return ok;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"qumbral"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace qumbral::cli
