#pragma once

#include <functional>
#include <map>
#include <optional>
#include <random>

#include "fgstates/states.hpp"
#include "fgstates/words.hpp"

namespace fgstates {

/// Markov weights on the boundary of F_n, parameterized by an eigenvalue
/// parameter lambda in (0, sqrt(n)):
///   alpha_plus / alpha_minus   first-letter mass, positive / negative sign
///   alpha_0 / alpha_1          per-letter factor, sign kept / sign switched
/// They satisfy n(alpha_plus + alpha_minus) = 1 and
/// n alpha_0 + (n-1) alpha_1 = 1, which is exactly additivity of the induced
/// cylinder measure.
struct AlphaParams {
  double alpha_plus = 0;
  double alpha_minus = 0;
  double alpha_0 = 0;
  double alpha_1 = 0;
};

AlphaParams alphas_from_lambda(int n, double lambda);  // LambdaOutOfRange outside (0, sqrt n)

/// Borel measure on the boundary, determined by its values on cylinders:
/// the first letter contributes alpha_plus or alpha_minus by sign, each
/// later letter alpha_1 on a sign switch and alpha_0 otherwise.
class CylinderMeasure {
 public:
  CylinderMeasure(int rank, AlphaParams params);

  int rank() const { return rank_; }
  const AlphaParams& params() const { return params_; }

  /// mu(Omega(s)); mu of the whole boundary (s = identity) is 1.
  double cylinder_mass(const ReducedWord& s) const;

 private:
  int rank_;
  AlphaParams params_;
};

/// d mu(u_j^-1 omega) / d mu (omega) for omega in the cylinder of `prefix`.
/// The derivative is constant on each of the four branch cylinders:
///   Omega(u_i), i != j          alpha_minus alpha_1 / alpha_plus
///   Omega(u_i^-1), any i        alpha_0
///   Omega(u_j u_i)              1 / alpha_0
///   Omega(u_j u_i^-1), i != j   alpha_minus / (alpha_plus alpha_1)
/// Throws PrefixTooShort when the prefix does not pin down a branch (empty,
/// or exactly u_j).
double rn_derivative(const CylinderMeasure& mu, int j, const ReducedWord& prefix);

/// Multiplicative cocycle P(s, omega) with P(u_j, omega) = p_j(omega), where
/// p_j takes one of three values by the first letter of omega:
///   (lambda - n/lambda)/(n-1)   on Omega(u_i), i != j
///   lambda / n                  on Omega(u_i^-1), any i
///   n / lambda                  on Omega(u_j)
/// Longer words chain through the shift: P(st, omega) = P(s, omega)
/// P(t, s^-1 omega), and inverse letters divide by the value at the shifted
/// point.  All three branch values are finite and nonzero on the open
/// parameter interval.
class Cocycle {
 public:
  Cocycle(int rank, double lambda);  // LambdaOutOfRange outside (0, sqrt n)

  int rank() const { return rank_; }
  double lambda() const { return lambda_; }

  double p_value(int j, const ReducedWord& omega_prefix) const;  // PrefixTooShort on empty
  double cocycle_value(const ReducedWord& s, const ReducedWord& omega_prefix) const;

  /// Same as cocycle_value but signals an undetermined branch with nullopt
  /// instead of throwing; the integrator uses this to subdivide on demand.
  std::optional<double> cocycle_value_if_determined(const ReducedWord& s,
                                                    const ReducedWord& omega_prefix) const;

 private:
  double branch(int j, Letter first) const;

  int rank_;
  double lambda_;
  double p_other_;  // first letter positive, generator != j
  double p_neg_;    // first letter negative
  double p_self_;   // first letter u_j itself
};

/// Exact integral of P(s, .) against the lambda-measure, summed over the
/// cylinders at depth |s| + 1 (subdividing further if a branch is ever
/// undetermined, which the depth choice already rules out).  Equals
/// phi_{lambda/n}(s) for every s.  TooDeep when the cylinder count at depth
/// |s| + 1 exceeds 10^7.
double boundary_state(const Cocycle& c, const ReducedWord& s);

/// Integration from a deeper starting layer; used to confirm the sum is
/// independent of the partition.  depth must be at least |s| + 1.
double boundary_state_at_depth(const Cocycle& c, const ReducedWord& s, int depth);

/// Cylinder weights specified only down to a finite depth: every reduced
/// word of length <= depth carries a mass, masses of non-leaf words are the
/// sums of their children's, and the total mass is 1.
class DepthWeights {
 public:
  static DepthWeights from_measure(const CylinderMeasure& mu, int depth);

  /// Builds the tree from strictly positive weights on the full sphere of
  /// one common length, normalizing total mass to 1.
  static DepthWeights from_leaf_weights(int rank, const std::map<ReducedWord, double>& leaves);

  int rank() const { return rank_; }
  int depth() const { return depth_; }

  std::optional<double> mass(const ReducedWord& s) const;  // nullopt beyond depth

 private:
  DepthWeights(int rank, int depth) : rank_(rank), depth_(depth) {}

  int rank_;
  int depth_;
  std::map<ReducedWord, double> mass_;
};

/// Leaf weights of the lambda-measure at `depth`, each multiplied by
/// (1 + amplitude * u) with u uniform on [-1, 1), then renormalized.
DepthWeights perturbed_lambda_weights(int rank, double lambda, int depth, double amplitude,
                                      std::mt19937_64& rng);

struct ExperimentResult {
  int depth = 0;
  std::int64_t cylinders_checked = 0;
  std::int64_t cylinders_skipped = 0;  // a needed mass lies beyond the known depth
  double ess_sup_diff = 0;             // max |sqrt(q_1) - sqrt(q_2)|
  double ess_inf_sum = 0;              // min  sqrt(q_1) + sqrt(q_2)
  std::optional<ReducedWord> sup_witness;
  std::optional<ReducedWord> inf_witness;
};

/// Rank-2 coarse comparison of the two translate derivatives: on every
/// depth-`depth` cylinder w it forms the finite quotients
/// q_j = mu(u_j^-1 Omega(w)) / mu(Omega(w)) and tracks the extremes of
/// |sqrt q_1 - sqrt q_2| and sqrt q_1 + sqrt q_2.  For the exact
/// lambda-measure both extremes equal lambda.
ExperimentResult measure_experiment(const CylinderMeasure& mu, int depth);
ExperimentResult measure_experiment(const DepthWeights& weights, int depth);

}  // namespace fgstates
