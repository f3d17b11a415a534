#include "halfline/verify.hpp"

#include <algorithm>
#include <cmath>

#include "halfline/boundary.hpp"

namespace halfline {

namespace {

void note_failure(VerifySummary* sum, int draw, int dim, double residual,
                  const std::string& what) {
  ++sum->failures;
  if (sum->notes.size() < 8)
    sum->notes.push_back("draw " + std::to_string(draw) + " dim " +
                         std::to_string(dim) + " " + what + " residual " +
                         std::to_string(residual));
}

void record(VerifySummary* sum, int draw, int dim, double residual,
            const std::string& what, double tol = 0.0) {
  sum->max_residual = std::max(sum->max_residual, residual);
  if (residual > tol) note_failure(sum, draw, dim, residual, what);
}

struct Draw {
  DiracData d;
  CalderonPair cp;
};

int pick_dim(const VerifyOptions& opt, int i) {
  return opt.dims[i % opt.dims.size()];
}

int pick_kernel(int dim, Rng& rng) {
  return (dim >= 4 && rng.uniform() < 0.3) ? 2 : 0;
}

Draw draw_system(const VerifyOptions& opt, int i) {
  std::uint64_t s = splitmix64(opt.seed + i);
  Rng rng(splitmix64(s ^ 0x9e3779b97f4a7c15ULL));
  int dim = pick_dim(opt, i);
  Draw dr;
  dr.d = random_system(dim, pick_kernel(dim, rng), s);
  if (opt.coupling > 0) {
    CoefficientPath path = random_coupled_path(dr.d, opt.coupling, 1.0, s + 1);
    dr.cp = calderon_subspaces(path, {opt.steps, 16});
  } else {
    dr.cp = constant_calderon(dr.d);
  }
  return dr;
}

// two subspaces with an exactly known intersection, cut from one unitary
std::pair<Subspace, Subspace> overlapping_pair(int dim, int k1, int k2, int shared,
                                               Rng& rng) {
  Matrix u = rng.haar_unitary(dim);
  Subspace a, b;
  a.ambient_dim = dim;
  b.ambient_dim = dim;
  a.frame = u.leftCols(k1);
  b.frame = Matrix(dim, k2);
  b.frame.leftCols(shared) = u.leftCols(shared);
  b.frame.rightCols(k2 - shared) = u.middleCols(k1, k2 - shared);
  return {a, b};
}

}  // namespace

Matrix gamma_anticommuting_part(const Matrix& x, const Matrix& gamma) {
  return (x + gamma * x * gamma) / 2.0;
}

Matrix alpha_commuting_part(const Matrix& x, const Matrix& alpha) {
  return (x + alpha * x * alpha) / 2.0;
}

Matrix alpha_anticommuting_part(const Matrix& x, const Matrix& alpha) {
  return (x - alpha * x * alpha) / 2.0;
}

Subspace random_subspace(int dim, int k, Rng& rng) {
  if (k <= 0) return zero_subspace(dim);
  Subspace s;
  s.ambient_dim = dim;
  s.frame = rng.haar_unitary(dim).leftCols(k);
  return s;
}

CoefficientPath random_coupled_path(const DiracData& d, double coupling, double r,
                                    std::uint64_t seed) {
  Rng rng(splitmix64(seed));
  Matrix wander = gamma_anticommuting_part(rng.hermitian(d.dim), d.gamma);
  Matrix pot = rng.hermitian(d.dim);
  if (d.alpha) {
    wander = alpha_commuting_part(wander, *d.alpha);
    pot = alpha_anticommuting_part(pot, *d.alpha);
  }
  double wn = std::max(1.0, op_norm(wander));
  double pn = std::max(1.0, op_norm(pot));
  wander *= coupling / wn;
  pot *= coupling / pn;

  CoefficientPath p;
  p.d = d;
  p.r = r;
  Matrix a0 = d.a0;
  p.a_of_t = [a0, wander, r](double t) {
    double env = std::sin(M_PI * t / r);
    return a0 + (env * env) * wander;
  };
  p.v_of_t = [pot, r](double t) {
    double env = std::sin(M_PI * t / r);
    return (env * env) * pot;
  };
  // |d/dt sin^2| peaks at pi / r; the rate is checked in the Frobenius norm
  p.lipschitz_bound = (M_PI / r) * (wander.norm() + 1e-12) + 1e-9;
  p.name = "random coupled";
  return p;
}

VerifySummary verify_windgen(const VerifyOptions& opt) {
  VerifySummary sum;
  sum.theorem = "windgen";
  for (int i = 0; i < opt.draws; ++i) {
    Draw dr = draw_system(opt, i);
    Rng rng(splitmix64(opt.seed + i) + 2);
    int k = rng.uniform_int(1, dr.d.dim - 1);
    BoundaryCondition b = raw_condition(random_subspace(dr.d.dim, k, rng));
    IndexReport rep = ext_index(dr.d, b, dr.cp);
    ++sum.draws;
    record(&sum, i, dr.d.dim, rep.max_residual(), "index routes");
  }
  return sum;
}

VerifySummary verify_agranovich_dynin(const VerifyOptions& opt) {
  VerifySummary sum;
  sum.theorem = "agranovich-dynin";
  for (int i = 0; i < opt.draws; ++i) {
    Draw dr = draw_system(opt, i);
    ++sum.draws;
    Rng rng(splitmix64(opt.seed + i) + 2);
    int n = dr.d.dim;
    BoundaryCondition b =
        raw_condition(random_subspace(n, rng.uniform_int(1, n - 1), rng));
    SpectralDecomposition dec = eigendecompose(dr.d);

    std::vector<double> levels = {0.0};
    for (int j = 0; j + 1 < dec.clusters(); ++j)
      levels.push_back((dec.eigenvalues[j] + dec.eigenvalues[j + 1]) / 2);
    for (double lev : levels) {
      AgranovichDyninReport rep = agranovich_dynin(dr.d, b, dr.cp, lev);
      record(&sum, i, n, rep.max_residual(), "level decomposition");
    }
    for (int j = 0; j < dec.clusters(); ++j) {
      DiscontinuityReport rep = level_discontinuity(dr.d, dr.cp, dec.eigenvalues[j]);
      record(&sum, i, n, rep.residual, "level discontinuity");
    }

    // elliptic data over a positive level: relative index is dim F - dim E
    double lev = dec.eigenvalues.back() > 0 ? dec.eigenvalues.back() / 2 : 0.5;
    Subspace lower = spectral_projection(dec, Interval::at_most(lev)).first;
    Subspace far_neg = spectral_projection(dec, Interval::less(-lev)).first;
    int p = lower.dim(), q = far_neg.dim();
    if (p > 0 && q >= 0) {
      int udim = rng.uniform_int(0, p);
      int fdim = q > 0 ? rng.uniform_int(0, q) : 0;
      Subspace cu = random_subspace(p, udim, rng);
      Subspace ce = orthogonal_complement(cu);
      Subspace cf = random_subspace(q, fdim, rng);
      Subspace cv = orthogonal_complement(cf);
      EllipticData data;
      data.lambda = lev;
      data.u = Subspace{n, lower.frame * cu.frame};
      data.e = Subspace{n, lower.frame * ce.frame};
      data.f = Subspace{n, far_neg.frame * cf.frame};
      data.v = Subspace{n, far_neg.frame * cv.frame};
      data.g = rng.complex_gaussian_matrix(data.v.dim(), data.u.dim());

      BoundaryCondition bc = from_elliptic_data(dr.d, data);
      Subspace upper = spectral_projection(dec, Interval::greater(lev)).first;
      PairReport pr = pair_report(bc.space, upper);
      double res = std::abs(pr.nullity - data.f.dim()) +
                   std::abs(pr.deficiency - data.e.dim());
      record(&sum, i, n, res, "elliptic data relative index");

      BoundaryCondition shown = adjoint_from_elliptic_data(dr.d, data);
      BoundaryCondition adj = adjoint_condition(dr.d, bc);
      double disp = op_norm(shown.space.projector() - adj.space.projector());
      record(&sum, i, n, disp, "adjoint display", 1e-8);
    }
  }
  return sum;
}

VerifySummary verify_duality(const VerifyOptions& opt) {
  VerifySummary sum;
  sum.theorem = "duality";
  for (int i = 0; i < opt.draws; ++i) {
    std::uint64_t s = splitmix64(opt.seed + i);
    Rng rng(splitmix64(s ^ 0x9e3779b97f4a7c15ULL));
    int dim = pick_dim(opt, i);
    DiracData d = random_system(dim, pick_kernel(dim, rng), s);
    double strength = opt.coupling > 0 ? opt.coupling : 0.5;
    CoefficientPath path = random_coupled_path(d, strength, 1.0, s + 1);
    CalderonPair cp = calderon_subspaces(path, {opt.steps, 16});
    ++sum.draws;
    record(&sum, i, dim, cp.duality_residual, "duality", 1e-8);
    record(&sum, i, dim, cp.cross_check, "resolution cross check", 1e-6);

    SpectralDecomposition dec = eigendecompose(d);
    double lev = smallest_admissible_level(cp.c_ext, dec);
    GraphData g = graph_representation(cp.c_ext, dec, lev);
    double block = op_norm(reconstructed_ext_projection(g) - cp.p_ext);
    record(&sum, i, dim, block, "graph block projection", 1e-8);
  }
  return sum;
}

VerifySummary verify_adjoint_sum(const VerifyOptions& opt) {
  VerifySummary sum;
  sum.theorem = "adjoint-sum";
  for (int i = 0; i < opt.draws; ++i) {
    Draw dr = draw_system(opt, i);
    Rng rng(splitmix64(opt.seed + i) + 2);
    int k = rng.uniform_int(0, dr.d.dim);
    BoundaryCondition b = raw_condition(random_subspace(dr.d.dim, k, rng));
    AdjointSumReport rep = adjoint_sum(dr.d, b, dr.cp);
    ++sum.draws;
    record(&sum, i, dr.d.dim, rep.residual, "adjoint pairing sum");
  }
  return sum;
}

VerifySummary verify_cobordism(const VerifyOptions& opt) {
  VerifySummary sum;
  sum.theorem = "cobordism";
  for (int i = 0; i < opt.draws; ++i) {
    Draw dr = draw_system(opt, i);
    CobordismReport rep = cobordism_check(dr.d, dr.cp);
    ++sum.draws;
    record(&sum, i, dr.d.dim, rep.residual, "chirality obstruction");
  }
  std::vector<std::pair<int, int>> shapes = {{3, 1}, {4, 2}, {1, 3}, {5, 3}, {2, 6}};
  for (size_t j = 0; j < shapes.size(); ++j) {
    auto [p, m] = shapes[j];
    UnbalancedProbe probe = unbalanced_gamma_probe(p, m, 10, opt.seed + 1000 + j);
    ++sum.draws;
    record(&sum, static_cast<int>(j), p + m, probe.bound_respected ? 0.0 : 1.0,
           "unbalanced kernel bound");
  }
  return sum;
}

namespace {

DoubledSystem draw_doubled(const VerifyOptions& opt, int i) {
  std::uint64_t s = splitmix64(opt.seed + i);
  Rng rng(splitmix64(s ^ 0x9e3779b97f4a7c15ULL));
  int dim = pick_dim(opt, i);
  DiracData d1 = random_system(dim, pick_kernel(dim, rng), s);
  d1.alpha.reset();
  DiracData d2 = d1;
  d2.a0 = -d1.a0;
  d2.gamma = -d1.gamma;
  double strength = opt.coupling;
  CoefficientPath p1 = strength > 0 ? random_coupled_path(d1, strength, 1.0, s + 1)
                                    : constant_path(d1, 1.0);
  CoefficientPath p2 = strength > 0 ? random_coupled_path(d2, strength, 1.0, s + 2)
                                    : constant_path(d2, 1.0);
  return double_paths(p1, p2);
}

}  // namespace

VerifySummary verify_bojarski(const VerifyOptions& opt) {
  VerifySummary sum;
  sum.theorem = "bojarski";
  for (int i = 0; i < opt.draws; ++i) {
    DoubledSystem ds = draw_doubled(opt, i);
    BojarskiReport rep = bojarski_check(ds, {opt.steps, 16});
    ++sum.draws;
    record(&sum, i, ds.d.dim, rep.residual, "transmission index");
    record(&sum, i, ds.d.dim, rep.compat_residual, "doubling compatibility", 1e-6);
  }
  return sum;
}

VerifySummary verify_splitting(const VerifyOptions& opt) {
  VerifySummary sum;
  sum.theorem = "splitting";
  for (int i = 0; i < opt.draws; ++i) {
    DoubledSystem ds = draw_doubled(opt, i);
    Rng rng(splitmix64(opt.seed + i) + 3);
    int n = ds.half1.d.dim;
    Subspace b1 = random_subspace(n, rng.uniform_int(0, n), rng);
    bool complementary = (i % 2 == 0);
    Subspace b2 = complementary ? orthogonal_complement(b1)
                                : random_subspace(n, rng.uniform_int(0, n), rng);
    SplittingReport rep = splitting_check(ds, b1, b2, {opt.steps, 16});
    ++sum.draws;
    record(&sum, i, ds.d.dim, rep.residual, "cut and paste");
    if (complementary)
      record(&sum, i, ds.d.dim, std::abs(rep.correction),
             "complementary correction vanishes");
  }
  return sum;
}

VerifySummary verify_susy(const VerifyOptions& opt) {
  VerifySummary sum;
  sum.theorem = "susy";
  for (int i = 0; i < opt.draws; ++i) {
    Draw dr = draw_system(opt, i);
    if (!dr.d.alpha) continue;
    Rng rng(splitmix64(opt.seed + i) + 4);

    Eigen::SelfAdjointEigenSolver<Matrix> es(*dr.d.alpha);
    int n = dr.d.dim;
    int minus = 0;
    for (int j = 0; j < n; ++j)
      if (es.eigenvalues()(j) < 0) ++minus;
    Matrix fm = es.eigenvectors().leftCols(minus);
    Matrix fp = es.eigenvectors().rightCols(n - minus);
    int kp = rng.uniform_int(0, n - minus);
    int km = rng.uniform_int(0, minus);
    if (kp + km == 0) kp = 1;
    Matrix frame(n, kp + km);
    if (kp > 0) frame.leftCols(kp) = fp * random_subspace(n - minus, kp, rng).frame;
    if (km > 0) frame.rightCols(km) = fm * random_subspace(minus, km, rng).frame;
    BoundaryCondition b = raw_condition(span(frame), "invariant");

    SusyIndexReport rep = susy_indices(dr.d, b, dr.cp);
    ++sum.draws;
    record(&sum, i, n, rep.residuals.at("split sum"), "graded split");
    record(&sum, i, n, rep.residuals.at("plus route"), "plus route");
    record(&sum, i, n, rep.residuals.at("minus route"), "minus route");
    record(&sum, i, n, rep.residuals.at("cauchy space invariance"),
           "cauchy space invariance", 1e-7);
  }
  return sum;
}

VerifySummary verify_appendix(const VerifyOptions& opt) {
  VerifySummary out;
  out.theorem = "appendix";
  for (int i = 0; i < opt.draws; ++i) {
    std::uint64_t s = splitmix64(opt.seed + i);
    Rng rng(splitmix64(s ^ 0x9e3779b97f4a7c15ULL));
    int dim = pick_dim(opt, i);
    DiracData d = random_system(dim, pick_kernel(dim, rng), s);
    ++out.draws;

    int k1 = rng.uniform_int(1, dim - 1);
    int k2 = rng.uniform_int(1, dim - 1);
    int shared = rng.uniform_int(0, std::min(k1, k2));
    if (k1 + k2 - shared > dim) shared = k1 + k2 - dim;
    auto [b1, b2] = overlapping_pair(dim, k1, k2, shared, rng);

    Subspace ann1 = omega_annihilator(b1, d.gamma);
    Subspace ann2 = omega_annihilator(b2, d.gamma);
    double invol =
        op_norm(omega_annihilator(ann1, d.gamma).projector() - b1.projector());
    record(&out, i, dim, invol, "annihilator involution", 1e-8);

    Subspace lhs_sum = omega_annihilator(sum(b1, b2), d.gamma);
    Subspace rhs_sum = intersect(ann1, ann2);
    record(&out, i, dim, op_norm(lhs_sum.projector() - rhs_sum.projector()),
           "annihilator of sum", 1e-8);

    Subspace lhs_int = omega_annihilator(intersect(b1, b2), d.gamma);
    Subspace rhs_int = sum(ann1, ann2);
    record(&out, i, dim, op_norm(lhs_int.projector() - rhs_int.projector()),
           "annihilator of intersection", 1e-8);

    // reduction by a projection, both orthogonal and oblique
    Subspace bred = random_subspace(dim, rng.uniform_int(1, dim - 1), rng);
    Matrix p_orth = random_subspace(dim, rng.uniform_int(1, dim - 1), rng).projector();
    Matrix skew = 0.25 * rng.complex_gaussian_matrix(dim, dim);
    Matrix sim = Matrix::Identity(dim, dim) + skew;
    Matrix p_obl = sim * p_orth * sim.inverse();
    for (const Matrix& p : {p_orth, p_obl}) {
      ProjectionReduction red = reduce_by_projection(bred, p);
      double res = (red.space_identity ? 0.0 : 1.0) +
                   std::abs(red.codim_in_kernel - red.codim_of_sum) +
                   std::abs(red.map_index - red.pair_with_image.index);
      record(&out, i, dim, res, "projection reduction");
    }

    Matrix q1 = random_subspace(dim, rng.uniform_int(0, dim), rng).projector();
    Matrix q2 = random_subspace(dim, rng.uniform_int(0, dim), rng).projector();
    StabilityShift shift = stability_shift(bred, q1, q2);
    record(&out, i, dim,
           std::abs(shift.ind_with_p - shift.ind_with_q - shift.shift),
           "stability shift");
  }
  return out;
}

VerifySummary verify_trace_bounds(int sections, std::uint64_t seed) {
  VerifySummary sum;
  sum.theorem = "trace-bounds";
  Rng rng(splitmix64(seed));
  for (int i = 0; i < sections; ++i) {
    int samples = rng.uniform_int(8, 80);
    double len = rng.uniform(0.5, 4.0);
    GridSection s = uniform_grid_section(1, 0.0, len, samples);
    Complex walk = rng.complex_gaussian();
    for (int j = 0; j < samples; ++j) {
      s.values(0, j) = walk;
      walk += 0.4 * rng.complex_gaussian();
    }
    if (i % 2 == 0) s.values(0, samples - 1) = 0.0;  // admit half line checks
    double a = rng.uniform(0.05, 5.0);
    TraceInequalityReport rep = trace_inequality_report(a, {s});
    sum.draws += rep.checked;
    if (rep.violations > 0) {
      sum.failures += rep.violations;
      if (sum.notes.size() < 8)
        sum.notes.push_back("section " + std::to_string(i) + " violates the bound");
    }
    sum.max_residual = std::max(sum.max_residual, rep.worst_ratio);
  }
  return sum;
}

std::vector<VerifySummary> verify_all(const VerifyOptions& opt) {
  return {verify_windgen(opt),       verify_agranovich_dynin(opt),
          verify_duality(opt),       verify_adjoint_sum(opt),
          verify_cobordism(opt),     verify_bojarski(opt),
          verify_splitting(opt),     verify_susy(opt),
          verify_appendix(opt),      verify_trace_bounds(opt.draws * 10, opt.seed)};
}

}  // namespace halfline
