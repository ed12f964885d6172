#include "fgstates/algebra.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace fgstates {

namespace {

void check_same_rank(int a, int b, const char* what) {
  if (a != b) {
    throw RankMismatch(std::string(what) + ": rank " + std::to_string(a) +
                       " vs rank " + std::to_string(b));
  }
}

template <typename Map>
void prune_map(Map& m) {
  for (auto it = m.begin(); it != m.end();) {
    if (std::abs(it->second) < kCoeffPrune) {
      it = m.erase(it);
    } else {
      ++it;
    }
  }
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

AlgebraElement::AlgebraElement(int rank) : rank_(rank) {
  if (rank < 2) throw Error("rank must be at least 2");
}

AlgebraElement AlgebraElement::unit(int rank) {
  return delta(ReducedWord::identity(rank));
}

AlgebraElement AlgebraElement::delta(const ReducedWord& s, Complex c) {
  AlgebraElement x(s.rank());
  x.add(s, c);
  return x;
}

AlgebraElement AlgebraElement::generator_sum(int rank) {
  AlgebraElement x(rank);
  for (int g = 1; g <= rank; ++g) x.add(ReducedWord::generator(rank, g), Complex(1.0, 0.0));
  return x;
}

Complex AlgebraElement::coeff(const ReducedWord& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

AlgebraElement& AlgebraElement::add(const ReducedWord& s, Complex c) {
  check_same_rank(rank_, s.rank(), "add term");
  auto [it, inserted] = terms_.emplace(s, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) < kCoeffPrune) terms_.erase(it);
  return *this;
}

AlgebraElement AlgebraElement::adjoint() const {
  AlgebraElement out(rank_);
  for (const auto& [s, c] : terms_) out.terms_.emplace(s.inverse(), std::conj(c));
  return out;
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  check_same_rank(a.rank_, b.rank_, "add");
  AlgebraElement out = a;
  for (const auto& [s, c] : b.terms_) out.add(s, c);
  return out;
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  check_same_rank(a.rank_, b.rank_, "subtract");
  AlgebraElement out = a;
  for (const auto& [s, c] : b.terms_) out.add(s, -c);
  return out;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  check_same_rank(a.rank_, b.rank_, "convolve");
  AlgebraElement out(a.rank_);
  for (const auto& [s, cs] : a.terms_) {
    for (const auto& [t, ct] : b.terms_) {
      auto [it, inserted] = out.terms_.emplace(s * t, cs * ct);
      if (!inserted) it->second += cs * ct;
    }
  }
  out.prune();
  return out;
}

AlgebraElement operator*(Complex c, const AlgebraElement& a) {
  AlgebraElement out(a.rank_);
  for (const auto& [s, cs] : a.terms_) out.terms_.emplace(s, c * cs);
  out.prune();
  return out;
}

void AlgebraElement::prune() { prune_map(terms_); }

std::string AlgebraElement::to_text() const {
  std::string out;
  for (const auto& [s, c] : terms_) {
    out += format_double(c.real());
    out += ' ';
    out += format_double(c.imag());
    out += " : ";
    out += s.str();
    out += '\n';
  }
  return out;
}

AlgebraElement AlgebraElement::from_text(int rank, std::string_view text) {
  AlgebraElement out(rank);
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw Error("algebra text line missing ':' separator");
    std::istringstream head(line.substr(0, colon));
    double re = 0, im = 0;
    if (!(head >> re >> im)) throw Error("algebra text line missing coefficient pair");
    std::string tail;
    if (head >> tail) throw Error("algebra text line has extra tokens before ':'");
    out.add(ReducedWord::parse(rank, line.substr(colon + 1)), Complex(re, im));
  }
  return out;
}

L2Vector::L2Vector(int rank) : rank_(rank) {
  if (rank < 2) throw Error("rank must be at least 2");
}

L2Vector L2Vector::basis(const ReducedWord& s) {
  L2Vector v(s.rank());
  v.add(s, Complex(1.0, 0.0));
  return v;
}

Complex L2Vector::entry(const ReducedWord& s) const {
  auto it = entries_.find(s);
  return it == entries_.end() ? Complex(0.0, 0.0) : it->second;
}

L2Vector& L2Vector::add(const ReducedWord& s, Complex c) {
  check_same_rank(rank_, s.rank(), "add entry");
  auto [it, inserted] = entries_.emplace(s, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) < kCoeffPrune) entries_.erase(it);
  return *this;
}

L2Vector operator+(const L2Vector& a, const L2Vector& b) {
  check_same_rank(a.rank_, b.rank_, "add");
  L2Vector out = a;
  for (const auto& [s, c] : b.entries_) out.add(s, c);
  return out;
}

L2Vector operator-(const L2Vector& a, const L2Vector& b) {
  check_same_rank(a.rank_, b.rank_, "subtract");
  L2Vector out = a;
  for (const auto& [s, c] : b.entries_) out.add(s, -c);
  return out;
}

L2Vector operator*(Complex c, const L2Vector& a) {
  L2Vector out(a.rank_);
  for (const auto& [s, cs] : a.entries_) out.entries_.emplace(s, c * cs);
  out.prune();
  return out;
}

void L2Vector::prune() { prune_map(entries_); }

L2Vector act(const AlgebraElement& x, const L2Vector& v) {
  check_same_rank(x.rank(), v.rank(), "act");
  L2Vector out(v.rank());
  for (const auto& [t, ct] : x.terms()) {
    for (const auto& [s, cs] : v.entries()) {
      out.add(t * s, ct * cs);
    }
  }
  return out;
}

Complex inner(const L2Vector& v, const L2Vector& w) {
  check_same_rank(v.rank(), w.rank(), "inner");
  Complex acc(0.0, 0.0);
  for (const auto& [s, c] : v.entries()) acc += c * std::conj(w.entry(s));
  return acc;
}

double norm_sq(const L2Vector& v) {
  double acc = 0;
  for (const auto& [s, c] : v.entries()) acc += std::norm(c);
  return acc;
}

bool in_half_space(HalfSpace h, const ReducedWord& s) {
  const bool starts_positive = !s.is_identity() && s.letters().front().sign > 0;
  return h == HalfSpace::Splus ? starts_positive : !starts_positive;
}

L2Vector project(HalfSpace h, const L2Vector& v) {
  L2Vector out(v.rank());
  for (const auto& [s, c] : v.entries()) {
    if (in_half_space(h, s)) out.add(s, c);
  }
  return out;
}

namespace {

double max_entry_diff(const L2Vector& a, const L2Vector& b) {
  double m = 0;
  for (const auto& [s, c] : a.entries()) m = std::max(m, std::abs(c - b.entry(s)));
  for (const auto& [s, c] : b.entries()) m = std::max(m, std::abs(a.entry(s) - c));
  return m;
}

double max_entry_abs(const L2Vector& a) {
  double m = 0;
  for (const auto& [s, c] : a.entries()) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

ObsReport verify_obs_identities(int rank, int depth, double tolerance) {
  ObsReport report;
  report.rank = rank;
  report.depth = depth;
  report.tolerance = tolerance;

  const AlgebraElement X = AlgebraElement::generator_sum(rank);
  const AlgebraElement Xstar = X.adjoint();
  const double inv_n = 1.0 / rank;
  const double inv_sqrt_n = 1.0 / std::sqrt(double(rank));

  for_each_ball_word(rank, depth, [&](const ReducedWord& s) {
    const L2Vector qv = project(HalfSpace::Sminus, L2Vector::basis(s));
    const L2Vector xstar_qv = act(Xstar, qv);

    // (a) Q X X* Q = n Q, reported at the T = X/sqrt(n) scale.
    const L2Vector lhs = project(HalfSpace::Sminus, act(X, xstar_qv));
    const double res_a = max_entry_diff(Complex(inv_n, 0.0) * lhs, qv);
    if (res_a > tolerance) {
      report.violations.push_back({"Q T T* Q = Q", s, res_a});
    }

    // (b) P u_i^-1 u_j X* Q = 0 for i != j; scale by 1/sqrt(n) for T*.
    for (int i = 1; i <= rank; ++i) {
      for (int j = 1; j <= rank; ++j) {
        if (i == j) continue;
        const ReducedWord shift = ReducedWord::generator(rank, i, -1) * ReducedWord::generator(rank, j, +1);
        const L2Vector moved = project(HalfSpace::Splus, act(AlgebraElement::delta(shift), xstar_qv));
        const double res_b = inv_sqrt_n * max_entry_abs(moved);
        if (res_b > tolerance) {
          report.violations.push_back({"P u_i^-1 u_j T* Q = 0", s, res_b});
        }
      }
    }
    ++report.checked;
  });
  return report;
}

Complex chi_limit_average(int rank, const ReducedWord& s, std::int64_t k) {
  if (k < 1) throw Error("averaging window k must be positive");
  L2Vector xi(rank);
  for (std::int64_t m = 1; m <= k; ++m) xi.add(generator_power(rank, 1, m), Complex(1.0, 0.0));
  const Complex ip = inner(act(AlgebraElement::delta(s), xi), xi);
  return ip / double(k);
}

}  // namespace fgstates
