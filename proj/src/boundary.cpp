#include "fgstates/boundary.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <string>

namespace fgstates {

namespace {

void check_lambda(int n, double lambda) {
  if (n < 2) throw Error("rank must be at least 2");
  if (!(lambda > 0.0) || !(lambda < std::sqrt(double(n)))) {
    throw LambdaOutOfRange("lambda must lie strictly inside (0, sqrt(" + std::to_string(n) +
                           "))");
  }
}

}  // namespace

AlphaParams alphas_from_lambda(int n, double lambda) {
  check_lambda(n, lambda);
  const double l2 = lambda * lambda;
  AlphaParams p;
  p.alpha_plus = (n - 1) * l2 / (n * (n * n - l2));
  p.alpha_minus = (n - l2) / (n * n - l2);
  p.alpha_0 = l2 / (double(n) * n);
  p.alpha_1 = (n - l2) / (double(n) * (n - 1));
  return p;
}

CylinderMeasure::CylinderMeasure(int rank, AlphaParams params)
    : rank_(rank), params_(params) {
  if (rank < 2) throw Error("rank must be at least 2");
  const double first = rank * (params.alpha_plus + params.alpha_minus);
  const double later = rank * params.alpha_0 + (rank - 1) * params.alpha_1;
  if (std::abs(first - 1.0) > 1e-9 || std::abs(later - 1.0) > 1e-9) {
    throw Error("alpha parameters violate the additivity normalizations");
  }
}

double CylinderMeasure::cylinder_mass(const ReducedWord& s) const {
  if (s.rank() != rank_) throw RankMismatch("word rank differs from measure rank");
  const auto& ls = s.letters();
  if (ls.empty()) return 1.0;
  double acc = ls.front().sign > 0 ? params_.alpha_plus : params_.alpha_minus;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    acc *= ls[i].sign == ls[i - 1].sign ? params_.alpha_0 : params_.alpha_1;
  }
  return acc;
}

double rn_derivative(const CylinderMeasure& mu, int j, const ReducedWord& prefix) {
  if (j < 1 || j > mu.rank()) throw InvalidGenerator("translate index outside 1..n");
  if (prefix.rank() != mu.rank()) throw RankMismatch("prefix rank differs from measure rank");
  const auto& ls = prefix.letters();
  if (ls.empty()) throw PrefixTooShort("empty prefix does not pin down a branch");
  const AlphaParams& p = mu.params();
  const Letter first = ls.front();
  if (first.sign < 0) return p.alpha_0;
  if (first.gen != j) return p.alpha_minus * p.alpha_1 / p.alpha_plus;
  if (ls.size() < 2) {
    throw PrefixTooShort("prefix u_j does not separate the last two branches");
  }
  if (ls[1].sign > 0) return 1.0 / p.alpha_0;
  return p.alpha_minus / (p.alpha_plus * p.alpha_1);
}

Cocycle::Cocycle(int rank, double lambda) : rank_(rank), lambda_(lambda) {
  check_lambda(rank, lambda);
  p_other_ = (lambda - rank / lambda) / (rank - 1);
  p_neg_ = lambda / rank;
  p_self_ = rank / lambda;
}

double Cocycle::branch(int j, Letter first) const {
  if (first.sign < 0) return p_neg_;
  if (first.gen == j) return p_self_;
  return p_other_;
}

double Cocycle::p_value(int j, const ReducedWord& omega_prefix) const {
  if (j < 1 || j > rank_) throw InvalidGenerator("generator index outside 1..n");
  if (omega_prefix.rank() != rank_) throw RankMismatch("prefix rank differs from cocycle rank");
  if (omega_prefix.is_identity()) {
    throw PrefixTooShort("empty prefix does not pin down a p_j branch");
  }
  return branch(j, omega_prefix.letters().front());
}

std::optional<double> Cocycle::cocycle_value_if_determined(
    const ReducedWord& s, const ReducedWord& omega_prefix) const {
  if (s.rank() != rank_ || omega_prefix.rank() != rank_) {
    throw RankMismatch("word rank differs from cocycle rank");
  }
  // Invariant: cur is the known prefix of the current shifted boundary
  // point; each processed letter of s consumes at most one letter of it.
  std::deque<Letter> cur(omega_prefix.letters().begin(), omega_prefix.letters().end());
  double value = 1.0;
  for (Letter x : s.letters()) {
    if (x.sign > 0) {
      if (cur.empty()) return std::nullopt;
      value *= branch(x.gen, cur.front());
      // shift by x^-1
      if (cur.front() == x) {
        cur.pop_front();
      } else {
        cur.push_front(x.inverse());
      }
    } else {
      // P(u_j^-1, omega) = 1 / p_j(u_j omega): shift first, then read the
      // branch off the shifted prefix.
      if (cur.empty()) return std::nullopt;
      if (cur.front() == x) {
        cur.pop_front();
      } else {
        cur.push_front(x.inverse());
      }
      if (cur.empty()) return std::nullopt;
      value /= branch(x.gen, cur.front());
    }
  }
  return value;
}

double Cocycle::cocycle_value(const ReducedWord& s, const ReducedWord& omega_prefix) const {
  const auto v = cocycle_value_if_determined(s, omega_prefix);
  if (!v) {
    throw PrefixTooShort("prefix of length " + std::to_string(omega_prefix.length()) +
                         " is too short for a word of length " + std::to_string(s.length()));
  }
  return *v;
}

namespace {

double integrate_cylinders(const Cocycle& c, const CylinderMeasure& mu, const ReducedWord& s,
                           const ReducedWord& prefix) {
  if (const auto v = c.cocycle_value_if_determined(s, prefix)) {
    return *v * mu.cylinder_mass(prefix);
  }
  double acc = 0;
  const int n = mu.rank();
  for (int code = 0; code < 2 * n; ++code) {
    const Letter x = Letter::from_code(code);
    if (!prefix.is_identity() && x == prefix.letters().back().inverse()) continue;
    acc += integrate_cylinders(c, mu, s, prefix.appended(x));
  }
  return acc;
}

}  // namespace

double boundary_state_at_depth(const Cocycle& c, const ReducedWord& s, int depth) {
  if (depth < s.length() + 1) {
    throw Error("integration depth must be at least |s| + 1");
  }
  if (sphere_cardinality(c.rank(), depth) > 1e7) {
    throw TooDeep("cylinder partition at depth " + std::to_string(depth) +
                  " exceeds 10^7 pieces");
  }
  const CylinderMeasure mu(c.rank(), alphas_from_lambda(c.rank(), c.lambda()));
  double acc = 0;
  for_each_sphere_word(c.rank(), depth, SphereConstraint::all(),
                       [&](const ReducedWord& w) { acc += integrate_cylinders(c, mu, s, w); });
  return acc;
}

double boundary_state(const Cocycle& c, const ReducedWord& s) {
  return boundary_state_at_depth(c, s, static_cast<int>(s.length()) + 1);
}

DepthWeights DepthWeights::from_measure(const CylinderMeasure& mu, int depth) {
  if (depth < 1) throw Error("depth must be at least 1");
  DepthWeights w(mu.rank(), depth);
  for_each_ball_word(mu.rank(), depth,
                     [&](const ReducedWord& s) { w.mass_.emplace(s, mu.cylinder_mass(s)); });
  return w;
}

DepthWeights DepthWeights::from_leaf_weights(int rank,
                                             const std::map<ReducedWord, double>& leaves) {
  if (leaves.empty()) throw Error("leaf weight table is empty");
  const int depth = static_cast<int>(leaves.begin()->first.length());
  if (depth < 1) throw Error("leaf words must have positive length");
  if (double(leaves.size()) != sphere_cardinality(rank, depth)) {
    throw Error("leaf weight table does not cover the full sphere");
  }
  double total = 0;
  for (const auto& [s, v] : leaves) {
    if (s.rank() != rank) throw RankMismatch("leaf word rank differs from table rank");
    if (s.length() != depth) throw Error("leaf words must all have the same length");
    if (!(v > 0)) throw Error("leaf weights must be strictly positive");
    total += v;
  }

  DepthWeights w(rank, depth);
  for (const auto& [s, v] : leaves) w.mass_.emplace(s, v / total);
  // Non-leaf masses by additivity: fold each level into its parents.
  for (int d = depth; d >= 1; --d) {
    for_each_sphere_word(rank, d, SphereConstraint::all(), [&](const ReducedWord& s) {
      auto parent = ReducedWord::from_reduced(
          rank, {s.letters().begin(), s.letters().end() - 1});
      w.mass_[parent] += w.mass_.at(s);
    });
  }
  return w;
}

std::optional<double> DepthWeights::mass(const ReducedWord& s) const {
  if (s.rank() != rank_) throw RankMismatch("word rank differs from weight-table rank");
  if (s.length() > depth_) return std::nullopt;
  return mass_.at(s);
}

DepthWeights perturbed_lambda_weights(int rank, double lambda, int depth, double amplitude,
                                      std::mt19937_64& rng) {
  if (!(amplitude >= 0.0 && amplitude < 1.0)) {
    throw Error("perturbation amplitude must lie in [0, 1)");
  }
  const CylinderMeasure mu(rank, alphas_from_lambda(rank, lambda));
  std::map<ReducedWord, double> leaves;
  for_each_sphere_word(rank, depth, SphereConstraint::all(), [&](const ReducedWord& s) {
    // Portable uniform in [-1, 1): top 53 bits of the engine output.
    const double u = 2.0 * (double(rng() >> 11) * 0x1.0p-53) - 1.0;
    leaves.emplace(s, mu.cylinder_mass(s) * (1.0 + amplitude * u));
  });
  return DepthWeights::from_leaf_weights(rank, leaves);
}

namespace {

ExperimentResult measure_experiment_core(
    int rank, int depth, const std::function<std::optional<double>(const ReducedWord&)>& mass) {
  if (rank != 2) throw Error("the translate experiment is defined for rank 2");
  if (depth < 2) throw Error("experiment depth must be at least 2");

  ExperimentResult res;
  res.depth = depth;
  res.ess_sup_diff = -1.0;
  res.ess_inf_sum = std::numeric_limits<double>::infinity();

  for_each_sphere_word(rank, depth, SphereConstraint::all(), [&](const ReducedWord& w) {
    const std::optional<double> mw = mass(w);
    double q[2];
    for (int j = 1; j <= 2; ++j) {
      const ReducedWord t = w.prepended(Letter(j, -1));
      std::optional<double> mt;
      if (!t.is_identity()) mt = mass(t);
      if (!mt || !mw) {
        ++res.cylinders_skipped;
        return;
      }
      q[j - 1] = *mt / *mw;
    }
    const double s1 = std::sqrt(q[0]);
    const double s2 = std::sqrt(q[1]);
    const double diff = std::abs(s1 - s2);
    const double sum = s1 + s2;
    if (diff > res.ess_sup_diff) {
      res.ess_sup_diff = diff;
      res.sup_witness = w;
    }
    if (sum < res.ess_inf_sum) {
      res.ess_inf_sum = sum;
      res.inf_witness = w;
    }
    ++res.cylinders_checked;
  });
  if (res.cylinders_checked == 0) throw Error("no cylinder had both quotients determined");
  return res;
}

}  // namespace

ExperimentResult measure_experiment(const CylinderMeasure& mu, int depth) {
  return measure_experiment_core(mu.rank(), depth, [&](const ReducedWord& s) {
    return std::optional<double>(mu.cylinder_mass(s));
  });
}

ExperimentResult measure_experiment(const DepthWeights& weights, int depth) {
  if (depth > weights.depth()) {
    throw Error("experiment depth exceeds the known weight depth");
  }
  return measure_experiment_core(weights.rank(), depth,
                                 [&](const ReducedWord& s) { return weights.mass(s); });
}

}  // namespace fgstates
