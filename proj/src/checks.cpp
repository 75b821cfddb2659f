#include "gke/checks.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <unordered_map>

#include "gke/errors.hpp"

namespace gke {
namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string fingerprint_of(const CheckInstance& inst) {
  if (!inst.fingerprint.empty()) return inst.fingerprint;
  std::string fp = "seed=" + std::to_string(inst.seed) + ":k=" + std::to_string(inst.ensemble.dim()) +
                   ":n=" + std::to_string(inst.ensemble.size()) + ":g=" + inst.generator.name();
  if (inst.p) fp += ":p=" + fmt(*inst.p);
  return fp;
}

HermitianMatrix hscale(const HermitianMatrix& a, double c) { return HermitianMatrix(c * a.entries()); }

HermitianMatrix scaled_identity(double c, int k) {
  return HermitianMatrix(Matrix(c * Matrix::Identity(k, k)));
}

double scalar_default_tol(double lhs, double rhs) { return 1e-8 * (1.0 + std::abs(lhs) + std::abs(rhs)); }

/// Aggregates the parts of a multi-part check: every part must hold and the
/// reported margin/labels come from the tightest one.
struct PartTracker {
  bool holds = true;
  double margin = std::numeric_limits<double>::infinity();
  std::string left;
  std::string right;

  void note(bool part_holds, double part_margin, const std::string& ll, const std::string& rl) {
    holds = holds && part_holds;
    if (part_margin < margin) {
      margin = part_margin;
      left = ll;
      right = rl;
    }
  }

  void loewner(const HermitianMatrix& lhs, const HermitianMatrix& rhs, double tol, const std::string& ll,
               const std::string& rl) {
    const double eff = tol > 0 ? tol : loewner_default_tolerance(lhs, rhs);
    const LoewnerVerdict v = loewner_leq(lhs, rhs, eff);
    note(v.holds, v.margin, ll, rl);
  }

  void scalar(double lhs, double rhs, double tol, const std::string& ll, const std::string& rl) {
    const double eff = tol > 0 ? tol : scalar_default_tol(lhs, rhs);
    const double gap = rhs - lhs;
    note(gap >= -eff, gap, ll, rl);
  }
};

PositiveDefiniteMatrix solved(const CheckInstance& inst, const MatrixEnsemble& e, const Generator& g,
                              const std::string& what) {
  SolveReport r = solve_gke(e, g, inst.solve_options);
  if (!r.converged) {
    throw SolverError("solve for " + what + " stopped at residual " + fmt(r.final_residual) + " (threshold " +
                          fmt(r.tolerance) + ") on instance " + fingerprint_of(inst),
                      std::move(r));
  }
  return r.solution;
}

PositiveDefiniteMatrix refined_sum(const MatrixEnsemble& e) {
  const SpectrumBounds& b = *e.bounds();
  Matrix acc = Matrix::Zero(e.dim(), e.dim());
  for (int i = 0; i < e.size(); ++i) acc += e.weight(i) * refinement_midpoint(b, e.matrix(i)).entries();
  return PositiveDefiniteMatrix(acc);
}

double quadratic_form(const CVector& x, const HermitianMatrix& a) { return std::real(x.dot(a.entries() * x)); }

std::vector<double> p_grid(const CheckInstance& inst, std::vector<double> defaults, double min_p,
                           const std::string& id) {
  if (!inst.p) return defaults;
  if (!(*inst.p >= min_p)) {
    throw ConfigError(id + " needs p >= " + fmt(min_p) + ", got " + fmt(*inst.p));
  }
  return {*inst.p};
}

std::string with_p(const std::string& label, double p) { return label + " [p=" + fmt(p) + "]"; }

/// Constant ((m+M)^2 / (4^{2/p} M m))^p shared by the p-th power checks.
double pth_power_constant(const SpectrumBounds& b, double p) {
  const double base = (b.m + b.M) * (b.m + b.M) / (std::pow(4.0, 2.0 / p) * b.M * b.m);
  return std::pow(base, p);
}

PartTracker eval_eq6_sandwich(const CheckInstance& inst, double tol) {
  PartTracker parts;
  const PositiveDefiniteMatrix sigma = solved(inst, inst.ensemble, inst.generator, "sigma_g");
  parts.loewner(harmonic_mean(inst.ensemble).base(), sigma.base(), tol, "harmonic mean", "sigma_g");
  parts.loewner(sigma.base(), arithmetic_mean(inst.ensemble).base(), tol, "sigma_g", "arithmetic mean");
  return parts;
}

PartTracker eval_lemma_inv_sum(const CheckInstance& inst, double tol) {
  PartTracker parts;
  const MatrixEnsemble& e = inst.ensemble;
  const double K = kantorovich_constant(e.bounds()->h());
  const PositiveDefiniteMatrix wsum = arithmetic_mean(e);
  const PositiveDefiniteMatrix wsum_inv = arithmetic_mean(e.inverted());
  parts.loewner(wsum_inv.base(), pd_scale(pd_inverse(wsum), K).base(), tol, "sum w_i inv(A_i)",
                "K * inv(sum w_i A_i)");
  parts.loewner(wsum.base(), pd_scale(pd_inverse(wsum_inv), K).base(), tol, "sum w_i A_i",
                "K * inv(sum w_i inv(A_i))");
  return parts;
}

PartTracker eval_prop22_reverse_am(const CheckInstance& inst, double tol) {
  PartTracker parts;
  const MatrixEnsemble& e = inst.ensemble;
  const double K = kantorovich_constant(e.bounds()->h());
  const PositiveDefiniteMatrix sigma = solved(inst, e, inst.generator, "sigma_g");
  parts.loewner(arithmetic_mean(e).base(), pd_scale(sigma, K).base(), tol, "arithmetic mean", "K * sigma_g");
  return parts;
}

PartTracker eval_prop22_reverse_hm(const CheckInstance& inst, double tol) {
  PartTracker parts;
  const MatrixEnsemble& e = inst.ensemble;
  const double K = kantorovich_constant(e.bounds()->h());
  const PositiveDefiniteMatrix sigma = solved(inst, e, inst.generator, "sigma_g");
  parts.loewner(sigma.base(), pd_scale(harmonic_mean(e), K).base(), tol, "sigma_g", "K * harmonic mean");
  return parts;
}

PartTracker eval_prop23_refined_am(const CheckInstance& inst, double tol) {
  PartTracker parts;
  const MatrixEnsemble& e = inst.ensemble;
  const double K = kantorovich_constant(e.bounds()->h());
  const PositiveDefiniteMatrix rbar = refined_sum(e);
  const PositiveDefiniteMatrix sigma = solved(inst, e, inst.generator, "sigma_g");
  parts.loewner(arithmetic_mean(e).base(), rbar.base(), tol, "arithmetic mean", "sum w_i r(A_i)");
  parts.loewner(rbar.base(), pd_scale(sigma, K).base(), tol, "sum w_i r(A_i)", "K * sigma_g");
  return parts;
}

PartTracker eval_prop23_refined_hm(const CheckInstance& inst, double tol) {
  PartTracker parts;
  const MatrixEnsemble& e = inst.ensemble;
  const double K = kantorovich_constant(e.bounds()->h());
  const PositiveDefiniteMatrix rbar = refined_sum(e);
  const PositiveDefiniteMatrix sigma = solved(inst, e, inst.generator, "sigma_g");
  parts.loewner(sigma.base(), rbar.base(), tol, "sigma_g", "sum w_i r(A_i)");
  parts.loewner(rbar.base(), pd_scale(harmonic_mean(e), K).base(), tol, "sum w_i r(A_i)", "K * harmonic mean");
  return parts;
}

PartTracker eval_thm24_norm(const CheckInstance& inst, double tol) {
  PartTracker parts;
  const MatrixEnsemble& e = inst.ensemble;
  const SpectrumBounds b = *e.bounds();
  const double Kh = kantorovich_constant(b.h());
  const PositiveDefiniteMatrix sigma = solved(inst, e, inst.generator, "sigma_g");
  for (double p : p_grid(inst, {1.0, 1.5, 2.0, 3.0}, 1.0, "thm24_norm")) {
    const PositiveDefiniteMatrix sp = solved(inst, e.elementwise_power(p), inst.generator, "sigma_g of powers");
    const double c = generalized_kantorovich(b.m, b.M, p) * std::pow(Kh, p);
    const HermitianMatrix spow = pd_power(sigma, p).base();
    parts.scalar(spectral_norm(sp.base()), c * spectral_norm(spow), tol,
                 with_p("spectral norm of sigma_g(A^p)", p), "bound * spectral norm of sigma_g^p");
    parts.scalar(trace_norm(sp.base()), c * trace_norm(spow), tol, with_p("trace norm of sigma_g(A^p)", p),
                 "bound * trace norm of sigma_g^p");
  }
  return parts;
}

MatrixEnsemble normalized_by_mean(const CheckInstance& inst, const PositiveDefiniteMatrix& sigma) {
  return inst.ensemble.congruenced(pd_inv_sqrt(sigma).entries());
}

PartTracker eval_thm24_scalar(const CheckInstance& inst, double tol) {
  PartTracker parts;
  const PositiveDefiniteMatrix sigma = solved(inst, inst.ensemble, inst.generator, "sigma_g");
  const MatrixEnsemble norm = normalized_by_mean(inst, sigma);
  const SpectrumBounds nb = tight_bounds(norm);
  const MatrixEnsemble bounded = norm.with_bounds(nb);
  const double Kh = kantorovich_constant(nb.h());
  const int k = bounded.dim();
  for (double p : p_grid(inst, {1.0, 1.5, 2.0, 3.0}, 1.0, "thm24_scalar")) {
    const PositiveDefiniteMatrix sp =
        solved(inst, bounded.elementwise_power(p), inst.generator, "sigma_g of normalized powers");
    const double c = generalized_kantorovich(nb.m, nb.M, p) * std::pow(Kh, p);
    parts.loewner(sp.base(), scaled_identity(c, k), tol, with_p("sigma_g(A'^p)", p), "K(m',M',p) K(h',2)^p I");
  }
  return parts;
}

PartTracker eval_yamazaki_ah(const CheckInstance& inst, double tol) {
  PartTracker parts;
  const PositiveDefiniteMatrix sigma = solved(inst, inst.ensemble, inst.generator, "sigma_g");
  const MatrixEnsemble norm = normalized_by_mean(inst, sigma);
  const int k = norm.dim();
  for (double p : p_grid(inst, {1.0, 2.0, 4.0}, 1.0, "yamazaki_ah")) {
    const Generator gp = inst.generator.deformed(p);
    const PositiveDefiniteMatrix sp = solved(inst, norm.elementwise_power(p), gp, "deformed mean of powers");
    parts.loewner(sp.base(), scaled_identity(1.0, k), tol, with_p("sigma_gp(A'^p)", p), "I");
  }
  return parts;
}

PartTracker eval_thm32_info_mono(const CheckInstance& inst, double tol) {
  PartTracker parts;
  const MatrixEnsemble& e = inst.ensemble;
  const double K = kantorovich_constant(e.bounds()->h());
  const PositiveLinearMap& phi = *inst.map;
  const PositiveDefiniteMatrix sigma = solved(inst, e, inst.generator, "sigma_g");
  const PositiveDefiniteMatrix sigma_phi = solved(inst, phi.apply(e), inst.generator, "sigma_g of mapped ensemble");
  const PositiveDefiniteMatrix phi_sigma = phi.apply(sigma);
  parts.loewner(phi_sigma.base(), sigma_phi.base(), tol, "Phi(sigma_g)", "sigma_g(Phi(A))");
  parts.loewner(sigma_phi.base(), pd_scale(phi_sigma, K).base(), tol, "sigma_g(Phi(A))", "K * Phi(sigma_g)");
  return parts;
}

PartTracker eval_thm33_pth_refined(const CheckInstance& inst, double tol) {
  PartTracker parts;
  const MatrixEnsemble& e = inst.ensemble;
  const SpectrumBounds b = *e.bounds();
  const PositiveLinearMap& phi = *inst.map;
  const PositiveDefiniteMatrix phi_rbar = phi.apply(refined_sum(e));
  const PositiveDefiniteMatrix phi_sigma = phi.apply(solved(inst, e, inst.generator, "sigma_g"));
  for (double p : p_grid(inst, {2.0, 2.5, 3.0}, 2.0, "thm33_pth_refined")) {
    const double c = pth_power_constant(b, p);
    const PositiveDefiniteMatrix lhs = pd_power(phi_rbar, p);
    const PositiveDefiniteMatrix rhs = pd_power(phi_sigma, p);
    parts.loewner(lhs.base(), pd_scale(rhs, c).base(), tol, with_p("Phi(sum w_i r(A_i))^p", p),
                  "c * Phi(sigma_g)^p");
    parts.loewner(rhs.base(), pd_scale(lhs, c).base(), tol, with_p("Phi(sigma_g)^p", p),
                  "c * Phi(sum w_i r(A_i))^p");
  }
  return parts;
}

PartTracker eval_prop34_pth_sigma_phi(const CheckInstance& inst, double tol) {
  PartTracker parts;
  const MatrixEnsemble& e = inst.ensemble;
  const SpectrumBounds b = *e.bounds();
  const PositiveLinearMap& phi = *inst.map;
  const PositiveDefiniteMatrix phi_rbar = phi.apply(refined_sum(e));
  const PositiveDefiniteMatrix sigma_phi = solved(inst, phi.apply(e), inst.generator, "sigma_g of mapped ensemble");
  for (double p : p_grid(inst, {2.0, 2.5, 3.0}, 2.0, "prop34_pth_sigma_phi")) {
    const double c = pth_power_constant(b, p);
    const PositiveDefiniteMatrix lhs = pd_power(phi_rbar, p);
    const PositiveDefiniteMatrix rhs = pd_power(sigma_phi, p);
    parts.loewner(lhs.base(), pd_scale(rhs, c).base(), tol, with_p("Phi(sum w_i r(A_i))^p", p),
                  "c * sigma_g(Phi(A))^p");
    parts.loewner(rhs.base(), pd_scale(lhs, c).base(), tol, with_p("sigma_g(Phi(A))^p", p),
                  "c * Phi(sum w_i r(A_i))^p");
  }
  return parts;
}

PartTracker eval_cor35_pth(const CheckInstance& inst, double tol) {
  PartTracker parts;
  const MatrixEnsemble& e = inst.ensemble;
  const SpectrumBounds b = *e.bounds();
  const PositiveLinearMap& phi = *inst.map;
  const PositiveDefiniteMatrix phi_sigma = phi.apply(solved(inst, e, inst.generator, "sigma_g"));
  const PositiveDefiniteMatrix sigma_phi = solved(inst, phi.apply(e), inst.generator, "sigma_g of mapped ensemble");
  for (double p : p_grid(inst, {2.0, 2.5, 3.0}, 2.0, "cor35_pth")) {
    const double c = pth_power_constant(b, p);
    parts.loewner(pd_power(sigma_phi, p).base(), pd_scale(pd_power(phi_sigma, p), c).base(), tol,
                  with_p("sigma_g(Phi(A))^p", p), "c * Phi(sigma_g)^p");
  }
  return parts;
}

PartTracker eval_thm36_vector(const CheckInstance& inst, double tol) {
  PartTracker parts;
  const MatrixEnsemble& e = inst.ensemble;
  const CVector& x = *inst.vector;
  const PositiveDefiniteMatrix sigma = solved(inst, e, inst.generator, "sigma_g");
  std::vector<double> values(static_cast<std::size_t>(e.size()));
  for (int i = 0; i < e.size(); ++i) values[static_cast<std::size_t>(i)] = quadratic_form(x, e.matrix(i).base());
  const double lhs = quadratic_form(x, sigma.base());
  const double rhs = scalar_gke(e.weights(), values, inst.generator);
  parts.scalar(lhs, rhs, tol, "<sigma_g x, x>", "scalar mean of <A_i x, x>");
  return parts;
}

PartTracker eval_bourin_special(const CheckInstance& inst, double tol) {
  PartTracker parts;
  const double v = inst.p.value_or(0.5);
  if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("bourin_special needs p in [0, 1], got " + fmt(v));
  const CVector& x = *inst.vector;
  const PositiveDefiniteMatrix& a = inst.ensemble.matrix(0);
  const PositiveDefiniteMatrix& b = inst.ensemble.matrix(1);
  const PositiveDefiniteMatrix geo = weighted_geometric_pair(a, b, v);
  const double lhs = quadratic_form(x, geo.base());
  const double qa = quadratic_form(x, a.base());
  const double qb = quadratic_form(x, b.base());
  const double rhs = std::pow(qa, 1.0 - v) * std::pow(qb, v);
  parts.scalar(lhs, rhs, tol, "<(A #_v B) x, x>", "<Ax,x>^{1-v} <Bx,x>^v");
  return parts;
}

PartTracker eval_thm41_increasing(const CheckInstance& inst, double tol) {
  PartTracker parts;
  const MatrixEnsemble& e = inst.ensemble;
  const double K = kantorovich_constant(e.bounds()->h());
  const MonotoneFunction& f = *inst.monotone;
  const PositiveDefiniteMatrix sigma_f = solved(inst, e.mapped(f), inst.generator, "sigma_g of mapped values");
  const PositiveDefiniteMatrix sigma = solved(inst, e, inst.generator, "sigma_g");
  const HermitianMatrix f_sigma = apply_scalar_function(f.as_function(), sigma);
  parts.loewner(sigma_f.base(), hscale(f_sigma, K), tol, "sigma_g(f(A))", "K * f(sigma_g)");
  return parts;
}

PartTracker eval_thm41_decreasing(const CheckInstance& inst, double tol) {
  PartTracker parts;
  const MatrixEnsemble& e = inst.ensemble;
  const double K = kantorovich_constant(e.bounds()->h());
  const MonotoneFunction& f = *inst.monotone;
  const PositiveDefiniteMatrix sigma_f = solved(inst, e.mapped(f), inst.generator, "sigma_g of mapped values");
  const PositiveDefiniteMatrix sigma = solved(inst, e, inst.generator, "sigma_g");
  const HermitianMatrix f_sigma = apply_scalar_function(f.as_function(), sigma);
  parts.loewner(f_sigma, pd_scale(sigma_f, K).base(), tol, "f(sigma_g)", "K * sigma_g(f(A))");
  return parts;
}

PartTracker eval_prop42_defect(const CheckInstance& inst, double tol) {
  PartTracker parts;
  const MatrixEnsemble& e = inst.ensemble;
  const SpectrumBounds b = *e.bounds();
  const MonotoneFunction& f = *inst.monotone;
  const double h_prime = f(b.M) / f(b.m);
  const double K = kantorovich_constant(h_prime);
  const MatrixEnsemble ef = e.mapped(f);
  const PositiveDefiniteMatrix sigma_f = solved(inst, ef, inst.generator, "sigma_g of mapped values");
  const PositiveDefiniteMatrix sigma = solved(inst, e, inst.generator, "sigma_g");
  const HermitianMatrix f_sigma = apply_scalar_function(f.as_function(), sigma);
  const int n = e.size();
  double w_max = 0.0;
  for (double w : e.weights()) w_max = std::max(w_max, w);
  const std::vector<double> equal(static_cast<std::size_t>(n), 1.0 / n);
  const PositiveDefiniteMatrix nabla = arithmetic_mean(e.reweighted(equal));
  const PositiveDefiniteMatrix nabla_f = arithmetic_mean(ef.reweighted(equal));
  const HermitianMatrix f_nabla = apply_scalar_function(f.as_function(), nabla);
  const HermitianMatrix rhs(K * sigma_f.entries() + n * w_max * (f_nabla.entries() - nabla_f.entries()));
  parts.loewner(f_sigma, rhs, tol, "f(sigma_g)", "K' * sigma_g(f(A)) + n w_max defect");
  return parts;
}

PartTracker eval_prop43_inverse(const CheckInstance& inst, double tol) {
  PartTracker parts;
  const MatrixEnsemble& e = inst.ensemble;
  const double K = kantorovich_constant(e.bounds()->h());
  const PositiveDefiniteMatrix sigma = solved(inst, e, inst.generator, "sigma_g");
  const PositiveDefiniteMatrix sigma_inv = solved(inst, e.inverted(), inst.generator, "sigma_g of inverses");
  parts.loewner(sigma_inv.base(), pd_scale(pd_inverse(sigma), K).base(), tol, "sigma_g(inv(A))",
                "K * inv(sigma_g)");
  return parts;
}

PartTracker eval_thm41_decreasing_corollary(const CheckInstance& inst, double tol) {
  PartTracker parts;
  const MatrixEnsemble& e = inst.ensemble;
  const double K = kantorovich_constant(e.bounds()->h());
  const PositiveDefiniteMatrix sigma = solved(inst, e, inst.generator, "sigma_g");
  const PositiveDefiniteMatrix sigma_inv = solved(inst, e.inverted(), inst.generator, "sigma_g of inverses");
  parts.loewner(pd_inverse(sigma).base(), pd_scale(sigma_inv, K).base(), tol, "inv(sigma_g)",
                "K * sigma_g(inv(A))");
  return parts;
}

using EvalFn = PartTracker (*)(const CheckInstance&, double);

const std::unordered_map<std::string, EvalFn>& evaluators() {
  static const std::unordered_map<std::string, EvalFn> table = {
      {"eq6_sandwich", eval_eq6_sandwich},
      {"lemma_inv_sum", eval_lemma_inv_sum},
      {"prop22_reverse_am", eval_prop22_reverse_am},
      {"prop22_reverse_hm", eval_prop22_reverse_hm},
      {"prop23_refined_am", eval_prop23_refined_am},
      {"prop23_refined_hm", eval_prop23_refined_hm},
      {"thm24_norm", eval_thm24_norm},
      {"thm24_scalar", eval_thm24_scalar},
      {"yamazaki_ah", eval_yamazaki_ah},
      {"thm32_info_mono", eval_thm32_info_mono},
      {"thm33_pth_refined", eval_thm33_pth_refined},
      {"prop34_pth_sigma_phi", eval_prop34_pth_sigma_phi},
      {"cor35_pth", eval_cor35_pth},
      {"thm36_vector", eval_thm36_vector},
      {"bourin_special", eval_bourin_special},
      {"thm41_increasing", eval_thm41_increasing},
      {"thm41_decreasing", eval_thm41_decreasing},
      {"prop42_defect", eval_prop42_defect},
      {"prop43_inverse", eval_prop43_inverse},
      {"thm41_decreasing_corollary", eval_thm41_decreasing_corollary},
  };
  return table;
}

void require_fields(const std::string& id, const CheckInstance& inst) {
  const CheckRequirements req = check_requirements(id);
  if (req.bounds && !inst.ensemble.bounds()) throw ConfigError(id + " needs ensemble bounds");
  if (req.map) {
    if (!inst.map) throw ConfigError(id + " needs a positive linear map");
    if (inst.map->in_dim() != inst.ensemble.dim()) {
      throw ConfigError(id + " map input dimension " + std::to_string(inst.map->in_dim()) +
                        " does not match ensemble dimension " + std::to_string(inst.ensemble.dim()));
    }
  }
  if (req.monotone_increasing || req.monotone_decreasing) {
    if (!inst.monotone) throw ConfigError(id + " needs a monotone function");
    const bool increasing = inst.monotone->direction() == MonotoneFunction::Direction::increasing;
    if (req.monotone_increasing && !increasing) {
      throw ConfigError(id + " needs an increasing function, got " + inst.monotone->name());
    }
    if (req.monotone_decreasing && increasing) {
      throw ConfigError(id + " needs a decreasing function, got " + inst.monotone->name());
    }
  }
  if (req.vector) {
    if (!inst.vector) throw ConfigError(id + " needs a vector");
    if (inst.vector->size() != inst.ensemble.dim()) {
      throw ConfigError(id + " vector length " + std::to_string(inst.vector->size()) +
                        " does not match ensemble dimension " + std::to_string(inst.ensemble.dim()));
    }
    if (!(inst.vector->norm() > 0.0)) throw ConfigError(id + " needs a nonzero vector");
  }
  if (req.pair && inst.ensemble.size() < 2) throw ConfigError(id + " needs at least two ensemble members");
}

}  // namespace

const std::vector<std::string>& all_check_ids() {
  static const std::vector<std::string> ids = {
      "eq6_sandwich",      "lemma_inv_sum",     "prop22_reverse_am",    "prop22_reverse_hm",
      "prop23_refined_am", "prop23_refined_hm", "thm24_norm",           "thm24_scalar",
      "yamazaki_ah",       "thm32_info_mono",   "thm33_pth_refined",    "prop34_pth_sigma_phi",
      "cor35_pth",         "thm36_vector",      "bourin_special",       "thm41_increasing",
      "thm41_decreasing",  "prop42_defect",     "prop43_inverse",       "thm41_decreasing_corollary",
  };
  return ids;
}

bool is_check_id(const std::string& id) { return evaluators().count(id) != 0; }

CheckRequirements check_requirements(const std::string& id) {
  CheckRequirements req;
  if (id == "eq6_sandwich" || id == "yamazaki_ah") return req;
  if (id == "thm36_vector") {
    req.vector = true;
    return req;
  }
  if (id == "bourin_special") {
    req.vector = true;
    req.pair = true;
    return req;
  }
  if (!is_check_id(id)) throw ConfigError("unknown check id: " + id);
  req.bounds = true;
  if (id == "thm32_info_mono" || id == "thm33_pth_refined" || id == "prop34_pth_sigma_phi" ||
      id == "cor35_pth") {
    req.map = true;
  } else if (id == "thm41_increasing" || id == "prop42_defect") {
    req.monotone_increasing = true;
  } else if (id == "thm41_decreasing") {
    req.monotone_decreasing = true;
  }
  return req;
}

CheckResult run_check(const std::string& check_id, const CheckInstance& inst, double tol) {
  const auto& table = evaluators();
  const auto it = table.find(check_id);
  if (it == table.end()) {
    std::string known;
    for (const auto& id : all_check_ids()) known += (known.empty() ? "" : ", ") + id;
    throw ConfigError("unknown check id: " + check_id + " (known: " + known + ")");
  }
  require_fields(check_id, inst);
  const auto t0 = std::chrono::steady_clock::now();
  const PartTracker parts = it->second(inst, tol);
  const auto t1 = std::chrono::steady_clock::now();
  CheckResult r;
  r.check_id = check_id;
  r.holds = parts.holds;
  r.margin = parts.margin;
  r.left_label = parts.left;
  r.right_label = parts.right;
  r.instance_fingerprint = fingerprint_of(inst);
  r.seed = inst.seed;
  r.dim = inst.ensemble.dim();
  r.count = inst.ensemble.size();
  r.generator_name = inst.generator.name();
  r.p = inst.p;
  r.elapsed_seconds = std::chrono::duration<double>(t1 - t0).count();
  return r;
}

}  // namespace gke
