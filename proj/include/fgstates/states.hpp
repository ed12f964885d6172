#pragma once

#include <string>
#include <vector>

#include "fgstates/algebra.hpp"
#include "fgstates/numeric.hpp"
#include "fgstates/words.hpp"

namespace fgstates {

enum class StateKind { PhiA, PsiAB, U1Length, ChiZ, SqrtNEigen };

std::string kind_name(StateKind k);
StateKind kind_from_name(std::string_view name);

/// Parameter pack for the implemented state families on F_n.
///
///   PhiA        phi_a(s) = e^{i tau(s) theta} a^{|s|-2 gamma(s)} b^{gamma(s)},
///               b = (n a^2 - 1)/(n - 1) derived from a.
///   PsiAB       psi_{a,b}(s) = a^{|s|-2 gamma(s)} b^{gamma(s)}, b free.
///   U1Length    s -> a^{|s|_1}.
///   ChiZ        chi_z(u_1^j) = z^j, zero off the u_1 line; |z| = 1.
///   SqrtNEigen  s -> n^{-|s|/2} on gamma(s) = 0, zero otherwise; coincides
///               with PhiA at a = 1/sqrt(n), theta = 0.
///
/// All kinds use the convention 0^0 = 1, so the identity always evaluates
/// to 1.
struct StateSpec {
  StateKind kind = StateKind::PsiAB;
  int n = 2;
  double a = 0;
  double b = 0;
  double theta = 0;
  Complex z{1.0, 0.0};

  static StateSpec phi_a(int n, double a, double theta = 0);
  static StateSpec psi_ab(int n, double a, double b);
  static StateSpec u1_length(int n, double a);
  static StateSpec chi_z(int n, Complex z);  // rejects |z| off 1 beyond 1e-12
  static StateSpec sqrt_n_eigen(int n);

  /// The exponent-weight parameter that classification sees: the stored b
  /// for PsiAB, the derived (na^2-1)/(n-1) for PhiA and SqrtNEigen.
  double effective_b() const;
};

Complex evaluate(const StateSpec& spec, const ReducedWord& s);

/// Linear extension to finitely supported algebra elements.
Complex evaluate(const StateSpec& spec, const AlgebraElement& x);

/// max over |s| <= depth of | sum_j phi(s u_j) - n a e^{i theta} phi(s) |.
/// PhiA only.
double eigen_relation_residual(const StateSpec& spec, int depth);

/// Re evaluate(spec, y* y); non-negative for positive-definite spec up to
/// roundoff, and exactly the obstruction witness when spec is not.
double left_kernel_residual(const StateSpec& spec, const AlgebraElement& y);

struct Classification {
  bool positive_definite = false;
  bool reduced = false;            // implies positive_definite
  bool ell2 = false;               // implies reduced
  bool pure_family_member = false; // b sits on the derived PhiA curve
};

/// Region tests for the (a, b) family at rank n, boundary cases resolved
/// toward the closed side with tolerance 1e-12:
///   positive definite  iff  -1 <= a <= 1 and (na^2-1)/(n-1) <= b <= 1
///   reduced            iff  additionally b <= (1-na^2)/(n-1)
///   ell2 (strict)      iff  |b| < (1-na^2)/(n-1)
/// Accepts PsiAB and PhiA specs.
Classification classify(const StateSpec& spec);

struct GrowthSeries {
  int K = 0;
  double lambda_plus = 0;
  double lambda_minus = 0;
  // Index k in 0..K.  A[k] sums |psi(s)|^2 over |s| = k ending in a positive
  // letter, B[k] over words ending in a negative letter; C[k] = A[k] + B[k]
  // except C[0] = 1.  A[0] = B[0] = 0 by convention.
  std::vector<double> A, B, C;
};

/// Closed-form sphere sums for PsiAB/PhiA.  With lp/lm = na^2 +- (n-1)b:
///   A_k = (n/2)(a^2+b) lp^{k-1}       + (n/2)(a^2-b) lm^{k-1}
///   B_k = (n/2)(a^2+a^4/b) lp^{k-1}   + (n/2)(a^2-a^4/b) lm^{k-1}
/// and on the b = 0 branch, with l = na^2:
///   A_k = l^k,  B_k = ((kn-k+1)/n) l^k.
GrowthSeries growth_series_closed_form(const StateSpec& spec, int K);

/// Direct enumeration of the spheres; SphereTooLarge beyond 10^7 words.
GrowthSeries growth_series_brute(const StateSpec& spec, int K);

struct PolyKernelRow {
  std::int64_t k;
  Complex psi;       // mixture state at u_1^k
  Complex expected;  // sum_j alpha_j z_j^k
  double abs_err;
};

struct PolyKernelReport {
  double residual = 0;        // Re psi(p(u_1)* p(u_1))
  double imag_residual = 0;   // |Im psi(p(u_1)* p(u_1))|, roundoff witness
  double max_table_err = 0;
  std::vector<PolyKernelRow> table;  // k = -10..10
};

/// For a polynomial p (coefficients low to high) and convex weights alpha_j
/// on unimodular zeros z_j of p, forms psi = sum_j alpha_j chi_{z_j} and
/// certifies psi(p(u_1)* p(u_1)) = 0 together with the moment table
/// psi(u_1^k) = sum_j alpha_j z_j^k.
PolyKernelReport poly_kernel_decomposition(int rank, const std::vector<Complex>& poly,
                                           const std::vector<std::pair<Complex, double>>& weights);

}  // namespace fgstates
