#pragma once

#include <map>
#include <string>
#include <vector>

#include "fgstates/numeric.hpp"
#include "fgstates/words.hpp"

namespace fgstates {

/// Coefficients whose modulus falls below this after arithmetic are dropped.
inline constexpr double kCoeffPrune = 1e-15;

/// Finitely supported element of the group algebra C[F_n].  Term maps are
/// kept in shortlex order so text and JSON renderings are deterministic.
class AlgebraElement {
 public:
  explicit AlgebraElement(int rank);

  static AlgebraElement unit(int rank);                             // delta_1
  static AlgebraElement delta(const ReducedWord& s, Complex c = Complex(1.0, 0.0));
  static AlgebraElement generator_sum(int rank);                    // X = u_1 + ... + u_n

  int rank() const { return rank_; }
  const std::map<ReducedWord, Complex>& terms() const { return terms_; }
  std::size_t support_size() const { return terms_.size(); }
  Complex coeff(const ReducedWord& s) const;
  bool is_zero() const { return terms_.empty(); }

  AlgebraElement& add(const ReducedWord& s, Complex c);  // accumulate one term

  AlgebraElement adjoint() const;  // s -> s^-1 with conjugated coefficients

  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);  // convolution
  friend AlgebraElement operator*(Complex c, const AlgebraElement& a);

  /// One line per term, shortlex order: "<re> <im> : <word>".
  std::string to_text() const;
  static AlgebraElement from_text(int rank, std::string_view text);

 private:
  void prune();

  int rank_;
  std::map<ReducedWord, Complex> terms_;
};

/// Finitely supported vector in l2(F_n), indexed by reduced words.
class L2Vector {
 public:
  explicit L2Vector(int rank);

  static L2Vector basis(const ReducedWord& s);  // delta_s

  int rank() const { return rank_; }
  const std::map<ReducedWord, Complex>& entries() const { return entries_; }
  Complex entry(const ReducedWord& s) const;
  std::size_t support_size() const { return entries_.size(); }

  L2Vector& add(const ReducedWord& s, Complex c);

  friend L2Vector operator+(const L2Vector& a, const L2Vector& b);
  friend L2Vector operator-(const L2Vector& a, const L2Vector& b);
  friend L2Vector operator*(Complex c, const L2Vector& a);

 private:
  void prune();

  int rank_;
  std::map<ReducedWord, Complex> entries_;
};

/// Left regular action: (x . v)(s) = sum_t x(t) v(t^-1 s).
L2Vector act(const AlgebraElement& x, const L2Vector& v);

/// Linear in the first slot, conjugate-linear in the second.
Complex inner(const L2Vector& v, const L2Vector& w);
double norm_sq(const L2Vector& v);

/// S+ holds the words whose first letter is positive; S- holds the identity
/// together with the words whose first letter is negative.
enum class HalfSpace { Splus, Sminus };

bool in_half_space(HalfSpace h, const ReducedWord& s);
L2Vector project(HalfSpace h, const L2Vector& v);

struct ObsViolation {
  std::string identity;
  ReducedWord witness;
  double magnitude;
};

struct ObsReport {
  int rank = 0;
  int depth = 0;
  double tolerance = 0;
  std::int64_t checked = 0;
  std::vector<ObsViolation> violations;
};

/// Checks two operator identities on every basis vector delta_s, |s| <= depth,
/// with T = X/sqrt(n), Q the projection onto S-, P onto S+:
///   (a) Q T T* Q = Q          (checked unscaled as Q X X* Q = n Q)
///   (b) P u_i^-1 u_j T* Q = 0 for all i != j.
/// The 1/sqrt(n) scale is applied once when magnitudes are reported.
ObsReport verify_obs_identities(int rank, int depth, double tolerance = 1e-12);

/// (1/k) < act(delta_s, xi_k), xi_k > with xi_k = sum_{m=1..k} delta_{u_1^m}.
/// Equals max(0, k - |j|)/k when s = u_1^j and 0 when s is off the u_1 line.
Complex chi_limit_average(int rank, const ReducedWord& s, std::int64_t k);

}  // namespace fgstates
