#pragma once

#include <cstddef>
#include <vector>

#include "fgstates/jacobi.hpp"
#include "fgstates/states.hpp"
#include "fgstates/words.hpp"

namespace fgstates {

/// Dense Gram matrix entries(i, j) = state(words[i]^-1 * words[j]).
/// Both triangles are evaluated independently, so the Hermitian symmetry of
/// the result is a genuine property of the state, not of the construction.
struct GramMatrix {
  StateSpec spec;
  std::vector<ReducedWord> words;
  std::vector<Complex> entries;  // row-major dim x dim

  std::size_t dim() const { return words.size(); }
  Complex at(std::size_t i, std::size_t j) const { return entries[i * words.size() + j]; }

  /// max_ij |entries(i,j) - conj(entries(j,i))|.
  double hermitian_defect() const;
};

/// Throws DuplicateWord on repeated words and RankMismatch when a word's rank
/// differs from the state's.  threads = 0 runs serially (the reproducibility
/// default); larger values fan the row loop out over that many workers, which
/// changes nothing observable because entries are independent.
GramMatrix build_gram(const StateSpec& spec, std::vector<ReducedWord> words, int threads = 0);

struct PsdCertificate {
  double tolerance = 0;
  double min_eigenvalue = 0;
  bool is_psd = false;
  std::vector<double> spectrum;  // ascending
};

/// Eigenvalue certificate via the built-in Jacobi solver.  Rejects matrices
/// whose Hermitian defect exceeds 1e-12 with NotHermitian.  is_psd means
/// min_eigenvalue >= -tolerance.
PsdCertificate psd_check(const GramMatrix& g, double tolerance = 1e-9);
PsdCertificate psd_check(const std::vector<Complex>& entries, std::size_t dim,
                         double tolerance = 1e-9);

/// Structure report for the nested positive-sphere Gram matrices A_k of a
/// PhiA state: A_k is indexed by the n^k positive words of length k in
/// lexicographic order, so A_{k+1} splits into n x n blocks of size n^k.
struct LayerStructureReport {
  int n = 0;
  int k = 0;
  double row_sum_err_k = 0;       // rows of A_k vs (na^2)^k
  double row_sum_err_k1 = 0;      // rows of A_{k+1} vs (na^2)^{k+1}
  double diag_block_err = 0;      // diagonal blocks of A_{k+1} vs A_k, entrywise
  double offdiag_block_err = 0;   // off-diagonal blocks vs the constant a^{2k} b
  double eigen_transfer_err = 0;  // eig(A_{k+1}) vs eig(A_k) + scaled first-layer pair
  double row_sum_tol = 1e-10;
  double eigen_transfer_tol = 1e-8;
  bool pass = false;
};

/// Builds A_k and A_{k+1} for a PhiA spec and checks: every row of A_k sums
/// to (na^2)^k; the diagonal blocks of A_{k+1} replicate A_k exactly and the
/// off-diagonal blocks are constant a^{2k} b; every eigenvalue of A_{k+1}
/// already occurs in A_k or in (na^2)^k * {1 - b, 1 + (n-1)b}, the scaled
/// spectrum of the first layer.  Throws TooLarge when n^{k+1} > 10^4.
LayerStructureReport verify_Ak_structure(const StateSpec& spec, int k);

struct IntegerPdReport {
  double a = 0;
  int K = 0;
  PsdCertificate toeplitz;   // Gram of j -> a^|j| on the integer segment -K..K
  PsdCertificate u1_length;  // Gram of U1Length(2, a) over the radius-3 ball
  bool pass = false;
};

/// Positive-definiteness of the one-parameter length function in two
/// incarnations: the integer Toeplitz matrix a^|i-j| and the U1Length state
/// pulled back to F_2.  Requires -1 < a < 1.
IntegerPdReport verify_integer_pd(double a, int K);

}  // namespace fgstates
