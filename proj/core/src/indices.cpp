#include "halfline/indices.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "halfline/rng.hpp"

namespace halfline {

namespace {

double map_max(const std::map<std::string, double>& m) {
  double worst = 0.0;
  for (const auto& [k, v] : m) worst = std::max(worst, std::abs(v));
  return worst;
}

}  // namespace

double IndexReport::max_residual() const { return map_max(residuals); }
double AgranovichDyninReport::max_residual() const { return map_max(residuals); }
double SusyIndexReport::max_residual() const { return map_max(residuals); }

IndexReport ext_index(const DiracData& d, const BoundaryCondition& b,
                      const CalderonPair& cp) {
  IndexReport rep;
  rep.method = "cauchy data intersection";
  rep.kernel_dim = intersect(b.space, cp.c_ext).dim();
  BoundaryCondition adj = adjoint_condition(d, b);
  rep.cokernel_dim = intersect(adj.space, cp.c_max).dim();
  rep.index = rep.kernel_dim - rep.cokernel_dim;

  PairReport pr = pair_report(b.space, cp.c_ext);
  rep.residuals["kernel rank route"] = std::abs(rep.kernel_dim - pr.nullity);
  rep.residuals["cokernel duality route"] = std::abs(rep.cokernel_dim - pr.deficiency);
  rep.residuals["pair index route"] = std::abs(rep.index - pr.index);
  return rep;
}

AgranovichDyninReport agranovich_dynin(const DiracData& d, const BoundaryCondition& b,
                                       const CalderonPair& cp, double lambda) {
  AgranovichDyninReport rep;
  rep.lambda = lambda;
  IndexReport full = ext_index(d, b, cp);
  IndexReport level = ext_index(d, aps_condition(d, lambda, true), cp);
  rep.full_index = full.index;
  rep.level_index = level.index;

  SpectralDecomposition dec = eigendecompose(d);
  Subspace upper = spectral_projection(dec, Interval::greater(lambda)).first;
  rep.correction = pair_report(b.space, upper).index;

  rep.residuals["full report"] = full.max_residual();
  rep.residuals["level report"] = level.max_residual();
  rep.residuals["level decomposition"] =
      std::abs(rep.full_index - rep.level_index - rep.correction);
  return rep;
}

DiscontinuityReport level_discontinuity(const DiracData& d, const CalderonPair& cp,
                                        double lambda) {
  DiscontinuityReport rep;
  rep.lambda = lambda;
  SpectralDecomposition dec = eigendecompose(d);
  for (int j = 0; j < dec.clusters(); ++j)
    if (std::abs(dec.eigenvalues[j] - lambda) <= dec.cluster_tol)
      rep.multiplicity += dec.multiplicity(j);
  int closed = ext_index(d, aps_condition(d, lambda, true), cp).index;
  int open = ext_index(d, aps_condition(d, lambda, false), cp).index;
  rep.jump = closed - open;
  rep.residual = std::abs(rep.jump - rep.multiplicity);
  return rep;
}

AdjointSumReport adjoint_sum(const DiracData& d, const BoundaryCondition& b,
                             const CalderonPair& cp) {
  AdjointSumReport rep;
  rep.index_b = ext_index(d, b, cp).index;
  rep.index_adjoint = ext_index(d, adjoint_condition(d, b), cp).index;
  rep.tail_kernel_dim = cp.tail_kernel_dim;
  rep.residual = std::abs(rep.index_b + rep.index_adjoint - rep.tail_kernel_dim);
  return rep;
}

CobordismReport cobordism_check(const DiracData& d, const CalderonPair& cp) {
  CobordismReport rep;
  rep.chiral_index = chirality_split(d).chiral_index;
  rep.tail_kernel_dim = cp.tail_kernel_dim;
  rep.fredholm_type = (cp.tail_kernel_dim == 0);
  rep.residual = rep.fredholm_type ? std::abs(rep.chiral_index) : 0.0;
  return rep;
}

UnbalancedProbe unbalanced_gamma_probe(int plus_dim, int minus_dim, int attempts,
                                       std::uint64_t seed) {
  UnbalancedProbe probe;
  probe.plus_dim = plus_dim;
  probe.minus_dim = minus_dim;
  probe.attempts = attempts;
  int n = plus_dim + minus_dim;
  Matrix gamma = Matrix::Zero(n, n);
  gamma.topLeftCorner(plus_dim, plus_dim) =
      Complex(0, 1) * Matrix::Identity(plus_dim, plus_dim);
  gamma.bottomRightCorner(minus_dim, minus_dim) =
      Complex(0, -1) * Matrix::Identity(minus_dim, minus_dim);

  probe.min_kernel_dim = n;
  for (int i = 0; i < attempts; ++i) {
    Rng rng(splitmix64(seed + i));
    Matrix x = rng.hermitian(n);
    Matrix a = (x + gamma * x * gamma) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    double scale = es.eigenvalues().cwiseAbs().maxCoeff();
    int kernel = 0;
    for (int j = 0; j < n; ++j)
      if (std::abs(es.eigenvalues()(j)) <= kRankTol * (1.0 + scale)) ++kernel;
    probe.min_kernel_dim = std::min(probe.min_kernel_dim, kernel);
  }
  probe.bound_respected = probe.min_kernel_dim >= std::abs(plus_dim - minus_dim);
  return probe;
}

DoubledSystem double_paths(const CoefficientPath& p1, const CoefficientPath& p2) {
  int n = p1.d.dim;
  if (p2.d.dim != n) throw std::invalid_argument("double_paths: dimension mismatch");
  double tol = kValidationTol * (1.0 + p1.d.a0.norm());
  if ((p1.d.gamma + p2.d.gamma).norm() > tol)
    throw std::invalid_argument("double_paths: gamma of the halves must be opposite");
  if ((p1.d.a0 + p2.d.a0).norm() > tol)
    throw std::invalid_argument("double_paths: boundary operators must be opposite");
  if (std::abs(p1.r - p2.r) > 1e-12 * (1.0 + p1.r))
    throw std::invalid_argument("double_paths: horizons must agree");

  DoubledSystem ds;
  ds.half1 = p1;
  ds.half2 = p2;
  ds.d.dim = 2 * n;
  ds.d.a0 = Matrix::Zero(2 * n, 2 * n);
  ds.d.a0.topLeftCorner(n, n) = p1.d.a0;
  ds.d.a0.bottomRightCorner(n, n) = p2.d.a0;
  ds.d.gamma = Matrix::Zero(2 * n, 2 * n);
  ds.d.gamma.topLeftCorner(n, n) = p1.d.gamma;
  ds.d.gamma.bottomRightCorner(n, n) = p2.d.gamma;
  ds.d.tol = std::max(p1.d.tol, p2.d.tol);

  ds.path.d = ds.d;
  ds.path.r = p1.r;
  ds.path.lipschitz_bound = std::max(p1.lipschitz_bound, p2.lipschitz_bound);
  ds.path.name = "doubled(" + p1.name + ", " + p2.name + ")";
  CoefficientPath h1 = p1, h2 = p2;
  ds.path.a_of_t = [n, h1, h2](double t) {
    Matrix a = Matrix::Zero(2 * n, 2 * n);
    a.topLeftCorner(n, n) = h1.a(t);
    a.bottomRightCorner(n, n) = h2.a(t);
    return a;
  };
  ds.path.v_of_t = [n, h1, h2](double t) {
    Matrix v = Matrix::Zero(2 * n, 2 * n);
    v.topLeftCorner(n, n) = h1.v(t);
    v.bottomRightCorner(n, n) = h2.v(t);
    return v;
  };
  return ds;
}

namespace {

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

}  // namespace

BojarskiReport bojarski_check(const DoubledSystem& ds, EvolveOptions opt) {
  BojarskiReport rep;
  CalderonPair cp1 = calderon_subspaces(ds.half1, opt);
  CalderonPair cp2 = calderon_subspaces(ds.half2, opt);
  CalderonPair cpd = calderon_subspaces(ds.path, opt);

  rep.compat_residual = op_norm(cpd.p_ext - direct_sum(cp1.p_ext, cp2.p_ext));

  BoundaryCondition trans = transmission_condition(ds.half1.d.dim);
  IndexReport doubled = ext_index(ds.d, trans, cpd);
  rep.doubled_index = doubled.index;
  rep.pair_index = pair_report(cp1.c_ext, cp2.c_ext).index;
  rep.residual = std::abs(rep.doubled_index - rep.pair_index) + doubled.max_residual();
  return rep;
}

SplittingReport splitting_check(const DoubledSystem& ds, const Subspace& b1,
                                const Subspace& b2, EvolveOptions opt) {
  SplittingReport rep;
  CalderonPair cp1 = calderon_subspaces(ds.half1, opt);
  CalderonPair cp2 = calderon_subspaces(ds.half2, opt);
  CalderonPair cpd = calderon_subspaces(ds.path, opt);

  IndexReport doubled = ext_index(ds.d, transmission_condition(ds.half1.d.dim), cpd);
  IndexReport side1 = ext_index(ds.half1.d, raw_condition(b1, "cut side 1"), cp1);
  IndexReport side2 = ext_index(ds.half2.d, raw_condition(b2, "cut side 2"), cp2);
  rep.doubled_index = doubled.index;
  rep.side1_index = side1.index;
  rep.side2_index = side2.index;
  rep.correction = pair_report(b1, b2).index;
  rep.residual =
      std::abs(rep.doubled_index - rep.side1_index - rep.side2_index + rep.correction) +
      doubled.max_residual() + side1.max_residual() + side2.max_residual();
  return rep;
}

SusyIndexReport susy_indices(const DiracData& d, const BoundaryCondition& b,
                             const CalderonPair& cp) {
  if (!d.alpha) throw std::invalid_argument("susy_indices: data carries no supersymmetry");
  const Matrix& alpha = *d.alpha;
  double tol = 100 * kValidationTol * (1.0 + alpha.norm());

  Eigen::SelfAdjointEigenSolver<Matrix> es(alpha);
  int plus = 0;
  for (int j = 0; j < d.dim; ++j)
    if (es.eigenvalues()(j) > 0) ++plus;
  Subspace h_minus = span(es.eigenvectors().leftCols(d.dim - plus));
  Subspace h_plus = span(es.eigenvectors().rightCols(plus));

  Matrix pb = b.space.projector();
  double invariance = op_norm(alpha * pb - pb * alpha);
  if (invariance > tol)
    throw std::invalid_argument("susy_indices: condition is not invariant, defect " +
                                std::to_string(invariance));

  SusyIndexReport rep;
  rep.residuals["cauchy space invariance"] =
      op_norm(alpha * cp.p_ext - cp.p_ext * alpha);

  Subspace b_p = intersect(b.space, h_plus);
  Subspace b_m = intersect(b.space, h_minus);
  Subspace c_p = intersect(cp.c_ext, h_plus);
  Subspace c_m = intersect(cp.c_ext, h_minus);
  rep.residuals["condition splits"] =
      std::abs(b_p.dim() + b_m.dim() - b.space.dim());
  rep.residuals["cauchy space splits"] =
      std::abs(c_p.dim() + c_m.dim() - cp.c_ext.dim());

  PairReport pair_p = pair_report(restrict_to(b_p, h_plus), restrict_to(c_p, h_plus));
  PairReport pair_m = pair_report(restrict_to(b_m, h_minus), restrict_to(c_m, h_minus));
  rep.index_plus = pair_p.index;
  rep.index_minus = pair_m.index;
  rep.kernel_plus = pair_p.nullity;
  rep.kernel_minus = pair_m.nullity;

  Subspace ba = omega_annihilator(b.space, d.gamma);
  rep.cokernel_plus = intersect(intersect(ba, h_minus), cp.c_max).dim();
  rep.cokernel_minus = intersect(intersect(ba, h_plus), cp.c_max).dim();
  rep.residuals["plus route"] =
      std::abs(rep.index_plus - rep.kernel_plus + rep.cokernel_plus);
  rep.residuals["minus route"] =
      std::abs(rep.index_minus - rep.kernel_minus + rep.cokernel_minus);

  rep.index_total = ext_index(d, b, cp).index;
  rep.residuals["split sum"] =
      std::abs(rep.index_total - rep.index_plus - rep.index_minus);
  return rep;
}

}  // namespace halfline
