#include "fgstates/serialize.hpp"

namespace fgstates {

using nlohmann::json;

void to_json(json& j, const StateSpec& s) {
  j = json{{"kind", kind_name(s.kind)}, {"n", s.n}};
  switch (s.kind) {
    case StateKind::PhiA:
      j["a"] = s.a;
      j["theta"] = s.theta;
      break;
    case StateKind::PsiAB:
      j["a"] = s.a;
      j["b"] = s.b;
      break;
    case StateKind::U1Length:
      j["a"] = s.a;
      break;
    case StateKind::ChiZ:
      j["z"] = s.z;
      break;
    case StateKind::SqrtNEigen:
      break;
  }
}

void from_json(const json& j, StateSpec& s) {
  const StateKind kind = kind_from_name(j.at("kind").get<std::string>());
  const int n = j.at("n").get<int>();
  switch (kind) {
    case StateKind::PhiA:
      s = StateSpec::phi_a(n, j.at("a").get<double>(), j.value("theta", 0.0));
      return;
    case StateKind::PsiAB:
      s = StateSpec::psi_ab(n, j.at("a").get<double>(), j.at("b").get<double>());
      return;
    case StateKind::U1Length:
      s = StateSpec::u1_length(n, j.at("a").get<double>());
      return;
    case StateKind::ChiZ:
      s = StateSpec::chi_z(n, j.at("z").get<Complex>());
      return;
    case StateKind::SqrtNEigen:
      s = StateSpec::sqrt_n_eigen(n);
      return;
  }
  throw Error("unknown state kind in JSON input");
}

void to_json(json& j, const Classification& c) {
  j = json{{"positive_definite", c.positive_definite},
           {"reduced", c.reduced},
           {"ell2", c.ell2},
           {"pure_family_member", c.pure_family_member}};
}

void to_json(json& j, const ObsViolation& v) {
  j = json{{"identity", v.identity}, {"witness", v.witness.str()}, {"magnitude", v.magnitude}};
}

void to_json(json& j, const ObsReport& r) {
  j = json{{"rank", r.rank},
           {"depth", r.depth},
           {"tolerance", r.tolerance},
           {"checked", r.checked},
           {"violations", r.violations}};
}

void to_json(json& j, const GrowthSeries& g) {
  j = json{{"K", g.K},
           {"lambda_plus", g.lambda_plus},
           {"lambda_minus", g.lambda_minus},
           {"A", g.A},
           {"B", g.B},
           {"C", g.C}};
}

void to_json(json& j, const PolyKernelRow& r) {
  j = json{{"k", r.k}, {"psi", r.psi}, {"expected", r.expected}, {"abs_err", r.abs_err}};
}

void to_json(json& j, const PolyKernelReport& r) {
  j = json{{"residual", r.residual},
           {"imag_residual", r.imag_residual},
           {"max_table_err", r.max_table_err},
           {"table", r.table}};
}

void to_json(json& j, const PsdCertificate& c) {
  j = json{{"tolerance", c.tolerance},
           {"min_eigenvalue", c.min_eigenvalue},
           {"is_psd", c.is_psd},
           {"spectrum", c.spectrum}};
}

void to_json(json& j, const LayerStructureReport& r) {
  j = json{{"n", r.n},
           {"k", r.k},
           {"row_sum_err_k", r.row_sum_err_k},
           {"row_sum_err_k1", r.row_sum_err_k1},
           {"diag_block_err", r.diag_block_err},
           {"offdiag_block_err", r.offdiag_block_err},
           {"eigen_transfer_err", r.eigen_transfer_err},
           {"row_sum_tol", r.row_sum_tol},
           {"eigen_transfer_tol", r.eigen_transfer_tol},
           {"pass", r.pass}};
}

void to_json(json& j, const IntegerPdReport& r) {
  j = json{{"a", r.a},
           {"K", r.K},
           {"toeplitz", r.toeplitz},
           {"u1_length", r.u1_length},
           {"pass", r.pass}};
}

void to_json(json& j, const AlphaParams& a) {
  j = json{{"alpha_plus", a.alpha_plus},
           {"alpha_minus", a.alpha_minus},
           {"alpha_0", a.alpha_0},
           {"alpha_1", a.alpha_1}};
}

void to_json(json& j, const ExperimentResult& r) {
  j = json{{"depth", r.depth},
           {"cylinders_checked", r.cylinders_checked},
           {"cylinders_skipped", r.cylinders_skipped},
           {"ess_sup_diff", r.ess_sup_diff},
           {"ess_inf_sum", r.ess_inf_sum},
           {"sup_witness", r.sup_witness ? json(r.sup_witness->str()) : json(nullptr)},
           {"inf_witness", r.inf_witness ? json(r.inf_witness->str()) : json(nullptr)}};
}

}  // namespace fgstates
