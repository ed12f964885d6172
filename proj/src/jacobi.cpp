#include "fgstates/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fgstates/errors.hpp"

namespace fgstates {

namespace {

constexpr int kMaxSweeps = 100;

double frobenius(const std::vector<double>& a) {
  double s = 0;
  for (double x : a) s += x * x;
  return std::sqrt(s);
}

double offdiag_frobenius(const std::vector<double>& a, std::size_t m) {
  double s = 0;
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t q = p + 1; q < m; ++q) s += 2.0 * a[p * m + q] * a[p * m + q];
  }
  return std::sqrt(s);
}

}  // namespace

SymmetricEigenResult jacobi_eigensystem(std::vector<double> a, std::size_t m,
                                        bool want_vectors) {
  if (m > kMaxEigenDim) {
    throw TooLarge("matrix dimension " + std::to_string(m) + " exceeds eigensolver cap " +
                   std::to_string(kMaxEigenDim));
  }
  if (a.size() != m * m) throw Error("matrix storage does not match dimension");

  SymmetricEigenResult out;
  std::vector<double> v;
  if (want_vectors) {
    v.assign(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) v[i * m + i] = 1.0;
  }

  const double threshold = 1e-14 * frobenius(a);
  int sweep = 0;
  while (offdiag_frobenius(a, m) > threshold) {
    if (++sweep > kMaxSweeps) throw Error("Jacobi eigensolver failed to converge");
    for (std::size_t p = 0; p + 1 < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        const double apq = a[p * m + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * m + q] - a[p * m + p]) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a[p * m + p] -= t * apq;
        a[q * m + q] += t * apq;
        a[p * m + q] = 0.0;
        a[q * m + p] = 0.0;
        for (std::size_t r = 0; r < m; ++r) {
          if (r == p || r == q) continue;
          const double arp = a[r * m + p];
          const double arq = a[r * m + q];
          a[r * m + p] = arp - s * (arq + tau * arp);
          a[r * m + q] = arq + s * (arp - tau * arq);
          a[p * m + r] = a[r * m + p];
          a[q * m + r] = a[r * m + q];
        }
        if (want_vectors) {
          for (std::size_t r = 0; r < m; ++r) {
            const double vrp = v[r * m + p];
            const double vrq = v[r * m + q];
            v[r * m + p] = vrp - s * (vrq + tau * vrp);
            v[r * m + q] = vrq + s * (vrp - tau * vrq);
          }
        }
      }
    }
  }
  out.sweeps = sweep;

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a[i * m + i] < a[j * m + j]; });

  out.values.resize(m);
  for (std::size_t j = 0; j < m; ++j) out.values[j] = a[order[j] * m + order[j]];
  if (want_vectors) {
    out.vectors.assign(m * m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t r = 0; r < m; ++r) out.vectors[r * m + j] = v[r * m + order[j]];
    }
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const std::vector<Complex>& a, std::size_t m) {
  if (a.size() != m * m) throw Error("matrix storage does not match dimension");

  bool real_input = true;
  for (const Complex& x : a) {
    if (x.imag() != 0.0) {
      real_input = false;
      break;
    }
  }

  if (real_input) {
    std::vector<double> re(m * m);
    for (std::size_t i = 0; i < m * m; ++i) re[i] = a[i].real();
    return jacobi_eigensystem(std::move(re), m, /*want_vectors=*/false).values;
  }

  // Realification: eigenvalues come out doubled.
  std::vector<double> big(4 * m * m, 0.0);
  const std::size_t mm = 2 * m;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const Complex x = a[i * m + j];
      big[i * mm + j] = x.real();
      big[(i + m) * mm + (j + m)] = x.real();
      big[i * mm + (j + m)] = -x.imag();
      big[(i + m) * mm + j] = x.imag();
    }
  }
  const auto eig = jacobi_eigensystem(std::move(big), mm, /*want_vectors=*/false);
  std::vector<double> out(m);
  for (std::size_t j = 0; j < m; ++j) out[j] = eig.values[2 * j];
  return out;
}

double reconstruction_error(const std::vector<double>& a, const SymmetricEigenResult& eig,
                            std::size_t m) {
  double worst = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double acc = 0;
      for (std::size_t k = 0; k < m; ++k) {
        acc += eig.vectors[i * m + k] * eig.values[k] * eig.vectors[j * m + k];
      }
      worst = std::max(worst, std::abs(acc - a[i * m + j]));
    }
  }
  return worst;
}

}  // namespace fgstates
