#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qumbral/appell.hpp"
#include "qumbral/audit.hpp"
#include "qumbral/poly.hpp"
#include "qumbral/umbral.hpp"

namespace qumbral {

enum class BasisId { monomial, genocchi_shifted, genocchi_order_m, x_minus_1_powers };
std::string_view to_string(BasisId b);

/// Coordinates of a polynomial in one of the supported bases.
/// coeffs[i] multiplies basis member number offset + i.
struct BasisExpansion {
  BasisId basis = BasisId::monomial;
  int order = 1;  // m, for genocchi_order_m
  int offset = 0;
  std::vector<Rational> coeffs;

  /// Coefficients predicted by a closed-form coefficient formula, kept next
  /// to the linear-solve coefficients when both exist.
  struct FormulaRoute {
    int offset = 0;
    std::vector<Rational> coeffs;
    bool reproduces_source = false;
  };
  std::optional<FormulaRoute> formula;
};

/// Solves p = sum_i c_i basis[i] where deg basis[i] = i, by back substitution.
/// Throws std::invalid_argument if the basis is not degree-complete up to deg p.
std::vector<Rational> solve_triangular_basis(const Poly& p, std::span<const Poly> basis);
/// sum_i coeffs[i] basis[i].
Poly combine(const Ctx& ctx, std::span<const Rational> coeffs, std::span<const Poly> basis);

/// (e_q(t) + 1)/(2t) as a functional, known to t^N. Its t^{-1} term is inert.
Functional genocchi_g(const Ctx& ctx, int n_max);

struct GenintValues {
  Rational pairing;        // <(e_q+1)/(2t) | p>
  Rational half_integral;  // (1/2) int_0^1 p d_q x
  Rational printed;        // (1/2)(int_0^1 p d_q x + p(0))
};
GenintValues genint_values(const Poly& p);
/// Variants "half-integral" and "printed" of the closed form for the
/// pairing with (e_q+1)/(2t), checked against the umbral pairing.
std::vector<AuditVerdict> genocchi_pairing_closed_form(const Poly& p);

/// Number-level statements about Genocchi numbers, for n = 0..nmax:
/// the claimed value G_0 = 1, the q-binomial sum identity (as printed and
/// with G_0 := 1), the integral of G_n by convolution versus direct Jackson
/// integration, the piecewise value claimed for that integral, and the
/// claimed value of (1/2)(int_0^1 G_n + G_n(0)).
std::vector<AuditVerdict> audit_number_recurrence(const AppellFamily& genocchi, int nmax);

/// Expansion over the shifted basis {G_1, ..., G_{deg p + 1}} (deg G_k = k-1).
/// Also records the functional coefficient formula
/// c_k = <(e_q+1)/(2t) | D_q^k p>/[k]_q! over {G_0, ..., G_{deg p}}.
BasisExpansion to_genocchi_basis(const AppellFamily& genocchi, const Poly& p);
Poly from_genocchi_basis(const AppellFamily& genocchi, const BasisExpansion& e);

/// Expansion over {(x-1)_q^0, ..., (x-1)_q^{deg p}}.
BasisExpansion to_xminus1_basis(const Poly& p);
BasisExpansion to_monomial_basis(const Poly& p);
/// Rebuilds monomial or (x-1)_q-power expansions.
Poly from_plain_basis(const Ctx& ctx, const BasisExpansion& e);

/// Statements about (x-1)_q^n: its pairing with e_q(t) t^k, its q-derivatives,
/// the expansion it is claimed to have in monomials, the expansion of G_n(x)
/// in its powers, and its claimed expansion in Genocchi polynomials.
std::vector<AuditVerdict> audit_xminus1_expansion(const AppellFamily& genocchi, int nmax);

struct HigherOrderSides {
  Rational series_value;       // [n]_q! [t^n] (2t/(e_q+1))^m
  Rational multinomial_value;  // sum over i_1+..+i_m = n of [n; i]_q prod G_{i_j}
};
HigherOrderSides higher_order_number_sides(const AppellFamily& genocchi, const AppellFamily& order_m, int n);
/// G^{[m]}_n; throws InternalConsistencyError if the two routes differ.
Rational higher_order_numbers(const AppellFamily& genocchi, const AppellFamily& order_m, int n);

/// Variants "printed" (prefactor 2^{-(m-1)}), "pairing-form" and
/// "plain-convolution" of the order-reduction formula for G^{[m]}_n(x).
std::vector<AuditVerdict> audit_order_reduction(FamilyBook& book, int n, int m);

/// Expansion over {G^[m]_m, ..., G^[m]_{deg p + m}}, plus the coefficient
/// formula c_k = <g^m t^k | p>/[k]_q! over k = 0..deg p.
BasisExpansion expand_in_order_m_basis(const AppellFamily& order_m, const Poly& p);
Poly from_order_m_basis(const AppellFamily& order_m, const BasisExpansion& e);

struct BasisAudit {
  BasisExpansion truth;
  std::vector<AuditVerdict> verdicts;
};

/// Coefficient of G^[m]_k(x) in the two-branch closed form, with the family
/// numbers A_j supplied by `fam` (Genocchi for G_n(x) itself).
Rational closed_form_order_m_coefficient(const AppellFamily& fam, int n, int m, int k);

/// G_n(x) against the two-branch closed form in the order-m basis.
/// Variants "printed" (k = 0..n) and "printed-degree-complete" (k = 0..n+m-1).
BasisAudit audit_order_m_closed_form(FamilyBook& book, int n, int m);
/// Same closed form with the numbers of an arbitrary family.
BasisAudit appell_in_genocchi_basis(const AppellFamily& fam, const AppellFamily& order_m, int n);

}  // namespace qumbral
