#pragma once

#include <cstddef>
#include <vector>

#include "fgstates/numeric.hpp"

namespace fgstates {

inline constexpr std::size_t kMaxEigenDim = 2000;

struct SymmetricEigenResult {
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // row-major m x m; column j pairs with values[j]
  int sweeps = 0;
};

/// Cyclic Jacobi on a dense real symmetric matrix (row-major m x m).
/// Converges when the off-diagonal Frobenius mass drops below
/// 1e-14 * ||A||_F; throws TooLarge beyond kMaxEigenDim and Error if the
/// sweep cap is ever hit.
SymmetricEigenResult jacobi_eigensystem(std::vector<double> a, std::size_t m,
                                        bool want_vectors = true);

/// Eigenvalues of a dense Hermitian matrix (row-major m x m), ascending.
/// Real input runs directly through the symmetric solver; genuinely complex
/// input is lifted to the 2m x 2m real form [[Re, -Im], [Im, Re]], whose
/// spectrum is the Hermitian spectrum doubled, and deduplicated by taking
/// every second value of the sorted list.
std::vector<double> hermitian_eigenvalues(const std::vector<Complex>& a, std::size_t m);

/// max_ij |(V diag(w) V^T - A)_ij|, the reconstruction defect of an
/// eigensystem against the original matrix.
double reconstruction_error(const std::vector<double>& a, const SymmetricEigenResult& eig,
                            std::size_t m);

}  // namespace fgstates
