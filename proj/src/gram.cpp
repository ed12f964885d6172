#include "fgstates/gram.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <thread>

namespace fgstates {

double GramMatrix::hermitian_defect() const {
  const std::size_t m = dim();
  double worst = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
    }
  }
  return worst;
}

GramMatrix build_gram(const StateSpec& spec, std::vector<ReducedWord> words, int threads) {
  std::set<ReducedWord> seen;
  for (const ReducedWord& w : words) {
    if (w.rank() != spec.n) {
      throw RankMismatch("word of rank " + std::to_string(w.rank()) +
                         " in a Gram build at rank " + std::to_string(spec.n));
    }
    if (!seen.insert(w).second) {
      throw DuplicateWord("repeated word \"" + w.str() + "\" in Gram index set");
    }
  }

  GramMatrix g;
  g.spec = spec;
  g.words = std::move(words);
  const std::size_t m = g.words.size();
  g.entries.assign(m * m, Complex(0.0, 0.0));

  std::vector<ReducedWord> inverses;
  inverses.reserve(m);
  for (const ReducedWord& w : g.words) inverses.push_back(w.inverse());

  const auto fill_rows = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        g.entries[i * m + j] = evaluate(spec, inverses[i] * g.words[j]);
      }
    }
  };

  if (threads <= 1 || m < 2) {
    fill_rows(0, m);
    return g;
  }

  const std::size_t workers = std::min<std::size_t>(threads, m);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (m + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(m, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(fill_rows, lo, hi);
  }
  for (auto& t : pool) t.join();
  return g;
}

PsdCertificate psd_check(const std::vector<Complex>& entries, std::size_t dim,
                         double tolerance) {
  double defect = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      defect = std::max(defect, std::abs(entries[i * dim + j] - std::conj(entries[j * dim + i])));
    }
  }
  if (defect > 1e-12) {
    throw NotHermitian("Hermitian defect " + std::to_string(defect) + " exceeds 1e-12");
  }

  PsdCertificate cert;
  cert.tolerance = tolerance;
  cert.spectrum = hermitian_eigenvalues(entries, dim);
  cert.min_eigenvalue = cert.spectrum.empty() ? 0.0 : cert.spectrum.front();
  cert.is_psd = cert.min_eigenvalue >= -tolerance;
  return cert;
}

PsdCertificate psd_check(const GramMatrix& g, double tolerance) {
  return psd_check(g.entries, g.dim(), tolerance);
}

LayerStructureReport verify_Ak_structure(const StateSpec& spec, int k) {
  if (spec.kind != StateKind::PhiA && spec.kind != StateKind::SqrtNEigen) {
    throw Error("verify_Ak_structure applies to PhiA specs");
  }
  if (k < 1) throw Error("layer index k must be at least 1");
  const int n = spec.n;
  double count = 1;
  for (int i = 0; i < k + 1; ++i) count *= n;
  if (count > 1e4) {
    throw TooLarge("positive sphere of size n^(k+1) exceeds 10^4 words");
  }

  const auto words_k = enumerate_sphere(n, k, SphereConstraint::positive_only());
  const auto words_k1 = enumerate_sphere(n, k + 1, SphereConstraint::positive_only());
  const GramMatrix Ak = build_gram(spec, words_k);
  const GramMatrix Ak1 = build_gram(spec, words_k1);
  const std::size_t mk = Ak.dim();

  LayerStructureReport rep;
  rep.n = n;
  rep.k = k;

  const double a = spec.a;
  const double b = spec.effective_b();
  const double target_k = ipow(n * a * a, k);
  const double target_k1 = ipow(n * a * a, k + 1);
  for (std::size_t i = 0; i < mk; ++i) {
    Complex row(0.0, 0.0);
    for (std::size_t j = 0; j < mk; ++j) row += Ak.at(i, j);
    rep.row_sum_err_k = std::max(rep.row_sum_err_k, std::abs(row - Complex(target_k, 0.0)));
  }
  for (std::size_t i = 0; i < Ak1.dim(); ++i) {
    Complex row(0.0, 0.0);
    for (std::size_t j = 0; j < Ak1.dim(); ++j) row += Ak1.at(i, j);
    rep.row_sum_err_k1 = std::max(rep.row_sum_err_k1, std::abs(row - Complex(target_k1, 0.0)));
  }

  // Lexicographic order on positive words of length k+1 is (first letter,
  // rest), so block (bi, bj) of A_{k+1} is indexed by u_bi words_k x u_bj
  // words_k.
  // The eigenstate vanishes on every switch word, so its off-diagonal
  // constant is exactly zero; the rounded effective_b of 1/sqrt(n) is not.
  const Complex offdiag = spec.kind == StateKind::SqrtNEigen
                              ? Complex(0.0, 0.0)
                              : Complex(ipow(a, 2 * k) * b, 0.0);
  for (int bi = 0; bi < n; ++bi) {
    for (int bj = 0; bj < n; ++bj) {
      for (std::size_t i = 0; i < mk; ++i) {
        for (std::size_t j = 0; j < mk; ++j) {
          const Complex got = Ak1.at(bi * mk + i, bj * mk + j);
          if (bi == bj) {
            rep.diag_block_err = std::max(rep.diag_block_err, std::abs(got - Ak.at(i, j)));
          } else {
            rep.offdiag_block_err = std::max(rep.offdiag_block_err, std::abs(got - offdiag));
          }
        }
      }
    }
  }

  const auto eig_k = hermitian_eigenvalues(Ak.entries, mk);
  const auto eig_k1 = hermitian_eigenvalues(Ak1.entries, Ak1.dim());
  std::vector<double> pool = eig_k;
  pool.push_back(target_k * (1.0 - b));            // scaled first-layer spectrum
  pool.push_back(target_k * (1.0 + (n - 1) * b));
  for (double lam : eig_k1) {
    double best = std::abs(lam - pool.front());
    for (double mu : pool) best = std::min(best, std::abs(lam - mu));
    rep.eigen_transfer_err = std::max(rep.eigen_transfer_err, best);
  }

  rep.pass = rep.row_sum_err_k <= rep.row_sum_tol && rep.row_sum_err_k1 <= rep.row_sum_tol &&
             rep.diag_block_err == 0.0 && rep.offdiag_block_err == 0.0 &&
             rep.eigen_transfer_err <= rep.eigen_transfer_tol;
  return rep;
}

IntegerPdReport verify_integer_pd(double a, int K) {
  if (!(a > -1.0 && a < 1.0)) throw Error("verify_integer_pd requires -1 < a < 1");
  if (K < 0) throw Error("segment bound K must be non-negative");

  IntegerPdReport rep;
  rep.a = a;
  rep.K = K;

  const std::size_t m = 2 * static_cast<std::size_t>(K) + 1;
  std::vector<Complex> toeplitz(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const std::int64_t d = i >= j ? std::int64_t(i - j) : std::int64_t(j - i);
      toeplitz[i * m + j] = Complex(ipow(a, d), 0.0);
    }
  }
  rep.toeplitz = psd_check(toeplitz, m, 1e-10);

  rep.u1_length = psd_check(build_gram(StateSpec::u1_length(2, a), ball(2, 3)), 1e-10);
  rep.pass = rep.toeplitz.is_psd && rep.u1_length.is_psd;
  return rep;
}

}  // namespace fgstates
