#include "fgstates/states.hpp"

#include <cmath>

namespace fgstates {

namespace {

constexpr double kClassifyTol = 1e-12;

void check_rank(int n) {
  if (n < 2) throw Error("rank must be at least 2");
}

}  // namespace

std::string kind_name(StateKind k) {
  switch (k) {
    case StateKind::PhiA: return "PhiA";
    case StateKind::PsiAB: return "PsiAB";
    case StateKind::U1Length: return "U1Length";
    case StateKind::ChiZ: return "ChiZ";
    case StateKind::SqrtNEigen: return "SqrtNEigen";
  }
  throw Error("unknown state kind");
}

StateKind kind_from_name(std::string_view name) {
  if (name == "PhiA") return StateKind::PhiA;
  if (name == "PsiAB") return StateKind::PsiAB;
  if (name == "U1Length") return StateKind::U1Length;
  if (name == "ChiZ") return StateKind::ChiZ;
  if (name == "SqrtNEigen") return StateKind::SqrtNEigen;
  throw Error("unknown state kind \"" + std::string(name) + "\"");
}

StateSpec StateSpec::phi_a(int n, double a, double theta) {
  check_rank(n);
  StateSpec s;
  s.kind = StateKind::PhiA;
  s.n = n;
  s.a = a;
  s.theta = theta;
  return s;
}

StateSpec StateSpec::psi_ab(int n, double a, double b) {
  check_rank(n);
  StateSpec s;
  s.kind = StateKind::PsiAB;
  s.n = n;
  s.a = a;
  s.b = b;
  return s;
}

StateSpec StateSpec::u1_length(int n, double a) {
  check_rank(n);
  StateSpec s;
  s.kind = StateKind::U1Length;
  s.n = n;
  s.a = a;
  return s;
}

StateSpec StateSpec::chi_z(int n, Complex z) {
  check_rank(n);
  if (std::abs(std::abs(z) - 1.0) > 1e-12) {
    throw ZeroNotOnCircle("chi_z requires |z| = 1 within 1e-12");
  }
  StateSpec s;
  s.kind = StateKind::ChiZ;
  s.n = n;
  s.z = z;
  return s;
}

StateSpec StateSpec::sqrt_n_eigen(int n) {
  check_rank(n);
  StateSpec s;
  s.kind = StateKind::SqrtNEigen;
  s.n = n;
  s.a = 1.0 / std::sqrt(double(n));
  return s;
}

double StateSpec::effective_b() const {
  switch (kind) {
    case StateKind::PsiAB:
      return b;
    case StateKind::PhiA:
    case StateKind::SqrtNEigen:
      return (n * a * a - 1.0) / (n - 1.0);
    default:
      throw Error("effective_b is defined for PhiA/PsiAB/SqrtNEigen only");
  }
}

Complex evaluate(const StateSpec& spec, const ReducedWord& s) {
  if (spec.n != s.rank()) {
    throw RankMismatch("state at rank " + std::to_string(spec.n) +
                       " evaluated on a word of rank " + std::to_string(s.rank()));
  }
  switch (spec.kind) {
    case StateKind::PhiA: {
      const WordStats st = stats(s);
      const double b = (spec.n * spec.a * spec.a - 1.0) / (spec.n - 1.0);
      const double mag = ipow(spec.a, st.length - 2 * st.gamma) * ipow(b, st.gamma);
      if (spec.theta == 0.0) return Complex(mag, 0.0);
      return std::polar(1.0, double(st.tau) * spec.theta) * mag;
    }
    case StateKind::PsiAB: {
      const WordStats st = stats(s);
      return Complex(ipow(spec.a, st.length - 2 * st.gamma) * ipow(spec.b, st.gamma), 0.0);
    }
    case StateKind::U1Length: {
      return Complex(ipow(spec.a, stats(s).u1_length), 0.0);
    }
    case StateKind::ChiZ: {
      for (Letter x : s.letters()) {
        if (x.gen != 1) return Complex(0.0, 0.0);
      }
      return unit_power(spec.z, stats(s).tau);
    }
    case StateKind::SqrtNEigen: {
      const WordStats st = stats(s);
      if (st.gamma != 0) return Complex(0.0, 0.0);
      return Complex(ipow(1.0 / std::sqrt(double(spec.n)), st.length), 0.0);
    }
  }
  throw Error("unknown state kind");
}

Complex evaluate(const StateSpec& spec, const AlgebraElement& x) {
  Complex acc(0.0, 0.0);
  for (const auto& [s, c] : x.terms()) acc += c * evaluate(spec, s);
  return acc;
}

double eigen_relation_residual(const StateSpec& spec, int depth) {
  if (spec.kind != StateKind::PhiA) {
    throw Error("eigen_relation_residual applies to PhiA specs");
  }
  const Complex scale = double(spec.n) * spec.a * std::polar(1.0, spec.theta);
  double worst = 0;
  for_each_ball_word(spec.n, depth, [&](const ReducedWord& s) {
    Complex sum(0.0, 0.0);
    for (int j = 1; j <= spec.n; ++j) sum += evaluate(spec, s.appended(Letter(j, +1)));
    worst = std::max(worst, std::abs(sum - scale * evaluate(spec, s)));
  });
  return worst;
}

double left_kernel_residual(const StateSpec& spec, const AlgebraElement& y) {
  return evaluate(spec, y.adjoint() * y).real();
}

Classification classify(const StateSpec& spec) {
  if (spec.kind != StateKind::PsiAB && spec.kind != StateKind::PhiA &&
      spec.kind != StateKind::SqrtNEigen) {
    throw Error("classify applies to PsiAB/PhiA specs");
  }
  const int n = spec.n;
  const double a = spec.a;
  const double b = spec.effective_b();
  const double lo = (n * a * a - 1.0) / (n - 1.0);
  const double hi = (1.0 - n * a * a) / (n - 1.0);

  Classification c;
  c.positive_definite = a >= -1.0 - kClassifyTol && a <= 1.0 + kClassifyTol &&
                        b >= lo - kClassifyTol && b <= 1.0 + kClassifyTol;
  c.reduced = c.positive_definite && b <= hi + kClassifyTol;
  c.ell2 = c.reduced && std::abs(b) < hi - kClassifyTol;
  c.pure_family_member = std::abs(a) <= 1.0 + kClassifyTol && std::abs(b - lo) <= kClassifyTol;
  return c;
}

GrowthSeries growth_series_closed_form(const StateSpec& spec, int K) {
  if (K < 1) throw Error("series order K must be at least 1");
  const int n = spec.n;
  const double a = spec.a;
  const double b = spec.effective_b();

  GrowthSeries gs;
  gs.K = K;
  gs.lambda_plus = n * a * a + (n - 1) * b;
  gs.lambda_minus = n * a * a - (n - 1) * b;
  gs.A.assign(K + 1, 0.0);
  gs.B.assign(K + 1, 0.0);
  gs.C.assign(K + 1, 0.0);
  gs.C[0] = 1.0;

  if (b == 0.0) {
    const double l = n * a * a;
    for (int k = 1; k <= K; ++k) {
      gs.A[k] = ipow(l, k);
      gs.B[k] = double(k * n - k + 1) / n * ipow(l, k);
      gs.C[k] = gs.A[k] + gs.B[k];
    }
    return gs;
  }

  const double half_n = 0.5 * n;
  const double ca_p = half_n * (a * a + b);
  const double ca_m = half_n * (a * a - b);
  const double a4_over_b = a * a * a * a / b;
  const double cb_p = half_n * (a * a + a4_over_b);
  const double cb_m = half_n * (a * a - a4_over_b);
  for (int k = 1; k <= K; ++k) {
    const double lp = ipow(gs.lambda_plus, k - 1);
    const double lm = ipow(gs.lambda_minus, k - 1);
    gs.A[k] = ca_p * lp + ca_m * lm;
    gs.B[k] = cb_p * lp + cb_m * lm;
    gs.C[k] = gs.A[k] + gs.B[k];
  }
  return gs;
}

GrowthSeries growth_series_brute(const StateSpec& spec, int K) {
  if (K < 1) throw Error("series order K must be at least 1");
  for (int k = 1; k <= K; ++k) {
    if (sphere_cardinality(spec.n, k) > 1e7) {
      throw SphereTooLarge("sphere of radius " + std::to_string(k) + " at rank " +
                           std::to_string(spec.n) + " exceeds 10^7 words");
    }
  }
  GrowthSeries gs;
  gs.K = K;
  const double b = spec.effective_b();
  gs.lambda_plus = spec.n * spec.a * spec.a + (spec.n - 1) * b;
  gs.lambda_minus = spec.n * spec.a * spec.a - (spec.n - 1) * b;
  gs.A.assign(K + 1, 0.0);
  gs.B.assign(K + 1, 0.0);
  gs.C.assign(K + 1, 0.0);
  gs.C[0] = 1.0;
  for (int k = 1; k <= K; ++k) {
    double acc_a = 0, acc_b = 0;
    for_each_sphere_word(spec.n, k, SphereConstraint::all(), [&](const ReducedWord& s) {
      const double v = std::norm(evaluate(spec, s));
      if (s.letters().back().sign > 0) {
        acc_a += v;
      } else {
        acc_b += v;
      }
    });
    gs.A[k] = acc_a;
    gs.B[k] = acc_b;
    gs.C[k] = acc_a + acc_b;
  }
  return gs;
}

PolyKernelReport poly_kernel_decomposition(int rank, const std::vector<Complex>& poly,
                                           const std::vector<std::pair<Complex, double>>& weights) {
  check_rank(rank);
  if (poly.empty()) throw Error("polynomial has no coefficients");
  if (weights.empty()) throw WeightsNotConvex("weight list is empty");

  double total = 0;
  for (const auto& [z, alpha] : weights) {
    if (std::abs(std::abs(z) - 1.0) > 1e-12) {
      throw ZeroNotOnCircle("mixture point is off the unit circle");
    }
    Complex pz(0.0, 0.0);
    for (std::size_t i = poly.size(); i-- > 0;) pz = pz * z + poly[i];
    if (std::abs(pz) > 1e-9) {
      throw NotAPolynomialZero("mixture point is not a zero of the polynomial");
    }
    if (!(alpha > 0)) throw WeightsNotConvex("weights must be strictly positive");
    total += alpha;
  }
  if (std::abs(total - 1.0) > 1e-9) throw WeightsNotConvex("weights must sum to 1");

  AlgebraElement p_u1(rank);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    p_u1.add(generator_power(rank, 1, static_cast<std::int64_t>(i)), poly[i]);
  }
  const AlgebraElement pp = p_u1.adjoint() * p_u1;

  PolyKernelReport report;
  Complex res(0.0, 0.0);
  std::vector<StateSpec> specs;
  specs.reserve(weights.size());
  for (const auto& [z, alpha] : weights) {
    specs.push_back(StateSpec::chi_z(rank, z));
    res += alpha * evaluate(specs.back(), pp);
  }
  report.residual = res.real();
  report.imag_residual = std::abs(res.imag());

  for (std::int64_t k = -10; k <= 10; ++k) {
    const ReducedWord w = generator_power(rank, 1, k);
    Complex psi(0.0, 0.0);
    Complex expected(0.0, 0.0);
    for (std::size_t j = 0; j < weights.size(); ++j) {
      psi += weights[j].second * evaluate(specs[j], w);
      expected += weights[j].second * unit_power(weights[j].first, k);
    }
    const double err = std::abs(psi - expected);
    report.table.push_back({k, psi, expected, err});
    report.max_table_err = std::max(report.max_table_err, err);
  }
  return report;
}

}  // namespace fgstates
