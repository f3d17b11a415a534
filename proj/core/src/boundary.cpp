#include "halfline/boundary.hpp"

#include <cmath>

namespace halfline {

namespace {

std::string fmt_level(double lambda) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", lambda);
  return buf;
}

}  // namespace

BoundaryCondition raw_condition(const Subspace& space, const std::string& label) {
  return {space, label, BcKind::raw};
}

BoundaryCondition aps_condition(const DiracData& d, double lambda, bool closed) {
  SpectralDecomposition dec = eigendecompose(d);
  Interval window = closed ? Interval::at_most(lambda) : Interval::less(lambda);
  auto [space, proj] = spectral_projection(dec, window);
  (void)proj;
  std::string label = std::string("APS(") + fmt_level(lambda) + (closed ? "]" : ")");
  return {space, label, BcKind::aps};
}

BoundaryCondition from_elliptic_data(const DiracData& d, const EllipticData& data) {
  int n = d.dim;
  if (data.g.rows() != data.v.dim() || data.g.cols() != data.u.dim())
    throw std::invalid_argument("from_elliptic_data: g shape mismatch");
  {
    SpectralDecomposition dec = eigendecompose(d);
    Subspace h_le = spectral_projection(dec, Interval::at_most(data.lambda)).first;
    Subspace h_lt = spectral_projection(dec, Interval::less(-data.lambda)).first;
    double tol = kValidationTol * (1.0 + d.a0.norm());
    bool ok = containment_defect(h_le, data.e) <= tol &&
              containment_defect(h_le, data.u) <= tol &&
              containment_defect(h_lt, data.f) <= tol &&
              containment_defect(h_lt, data.v) <= tol &&
              data.e.dim() + data.u.dim() == h_le.dim() &&
              data.f.dim() + data.v.dim() == h_lt.dim();
    if (data.e.dim() && data.u.dim())
      ok = ok && op_norm(data.e.frame.adjoint() * data.u.frame) <= tol;
    if (data.f.dim() && data.v.dim())
      ok = ok && op_norm(data.f.frame.adjoint() * data.v.frame) <= tol;
    if (!ok)
      throw std::invalid_argument(
          "from_elliptic_data: splits are not orthogonal decompositions of "
          "the spectral buckets");
  }
  Matrix cols(n, data.f.dim() + data.u.dim());
  cols.leftCols(data.f.dim()) = d.gamma * data.f.frame;
  cols.rightCols(data.u.dim()) =
      data.u.frame + d.gamma * (data.v.frame * data.g);
  BoundaryCondition b;
  b.space = span(cols);
  b.label = "elliptic-data(" + fmt_level(data.lambda) + ")";
  b.kind = BcKind::elliptic_data;
  if (b.space.dim() != data.f.dim() + data.u.dim())
    throw std::invalid_argument("from_elliptic_data: frame collapsed, data invalid");
  return b;
}

BoundaryCondition adjoint_from_elliptic_data(const DiracData& d,
                                             const EllipticData& data) {
  int n = d.dim;
  Matrix cols(n, data.e.dim() + data.v.dim());
  cols.leftCols(data.e.dim()) = d.gamma * data.e.frame;
  cols.rightCols(data.v.dim()) =
      data.v.frame + d.gamma * (data.u.frame * data.g.adjoint());
  BoundaryCondition b;
  b.space = span(cols);
  b.label = "elliptic-data-adjoint(" + fmt_level(data.lambda) + ")";
  b.kind = BcKind::elliptic_data;
  return b;
}

EllipticData elliptic_data_of(const DiracData& d, const BoundaryCondition& b,
                              double lambda) {
  SpectralDecomposition dec = eigendecompose(d);
  Subspace h_gt = spectral_projection(dec, Interval::greater(lambda)).first;
  Subspace h_le = spectral_projection(dec, Interval::at_most(lambda)).first;
  Subspace h_lt_neg = spectral_projection(dec, Interval::less(-lambda)).first;
  Matrix q_le = h_le.projector();

  EllipticData out;
  out.lambda = lambda;

  Subspace b_high = intersect(b.space, h_gt);
  out.f = image_under(d.gamma.adjoint(), b_high);

  out.u = image_under(q_le, b.space);
  // complements inside the spectral buckets
  out.e = intersect(orthogonal_complement(out.u), h_le);
  out.v = intersect(orthogonal_complement(out.f), h_lt_neg);

  // graph part of B: the orthocomplement of gamma F inside B
  Matrix pgf = (d.gamma * out.f.frame) * (d.gamma * out.f.frame).adjoint();
  Subspace graph = span((Matrix::Identity(d.dim, d.dim) - pgf) * b.space.frame,
                        b.space.rank_tol);
  if (graph.dim() != out.u.dim())
    throw std::invalid_argument(
        "elliptic_data_of: condition is not graph-like over the level");

  // g u = gamma^* Q_{> lambda} w for the graph element w over u
  Matrix ucoord = out.u.frame.adjoint() * (q_le * graph.frame);
  Matrix vcoord = out.v.frame.adjoint() *
                  (d.gamma.adjoint() * (h_gt.projector() * graph.frame));
  out.g = vcoord * ucoord.inverse();
  return out;
}

BoundaryCondition adjoint_condition(const DiracData& d, const BoundaryCondition& b) {
  BoundaryCondition out;
  out.space = omega_annihilator(b.space, d.gamma);
  out.label = b.label + "^a";
  out.kind = BcKind::raw;
  return out;
}

BoundaryCondition self_adjoint_from_lagrangian(const DiracData& d,
                                               const Subspace& lagrangian,
                                               const Subspace& f, const Matrix& g) {
  SpectralDecomposition dec = eigendecompose(d);
  Subspace h0 = spectral_projection(dec, Interval::point(0.0)).first;
  Subspace h_neg = spectral_projection(dec, Interval::less(0.0)).first;

  double scale = 1.0 + d.a0.norm();
  if (containment_defect(h0, lagrangian) > kValidationTol * scale)
    throw std::invalid_argument(
        "Hermitian symplectic obstruction: L does not lie in ker a0");
  Subspace gl = image_under(d.gamma, lagrangian);
  if (2 * lagrangian.dim() != h0.dim() ||
      intersect(lagrangian, gl).dim() != 0 ||
      op_norm(lagrangian.frame.adjoint() * gl.frame) > kValidationTol * scale)
    throw std::invalid_argument(
        "Hermitian symplectic obstruction: L is not Lagrangian in ker a0");
  if (containment_defect(h_neg, f) > kValidationTol * scale)
    throw std::invalid_argument(
        "Hermitian symplectic obstruction: F does not lie in H_<");

  Subspace v = intersect(orthogonal_complement(f), h_neg);
  // w runs through V + L; g is Hermitian in the frame [V L]
  Matrix wframe(d.dim, v.dim() + lagrangian.dim());
  wframe << v.frame, lagrangian.frame;
  if (g.rows() != wframe.cols() || g.cols() != wframe.cols())
    throw std::invalid_argument("self_adjoint_from_lagrangian: g shape mismatch");
  if ((g - g.adjoint()).norm() > kValidationTol * (1.0 + g.norm()))
    throw std::invalid_argument(
        "Hermitian symplectic obstruction: g is not Hermitian");

  Matrix cols(d.dim, f.dim() + wframe.cols());
  cols.leftCols(f.dim()) = d.gamma * f.frame;
  cols.rightCols(wframe.cols()) = wframe + d.gamma * (wframe * g);
  BoundaryCondition b;
  b.space = span(cols);
  b.label = "Lagrangian";
  b.kind = BcKind::lagrangian;
  return b;
}

BoundaryCondition transmission_condition(int dim) {
  Matrix frame(2 * dim, dim);
  frame.topRows(dim) = Matrix::Identity(dim, dim) / std::sqrt(2.0);
  frame.bottomRows(dim) = Matrix::Identity(dim, dim) / std::sqrt(2.0);
  BoundaryCondition b;
  b.space = Subspace{2 * dim, frame, kRankTol};
  b.label = "transmission";
  b.kind = BcKind::transmission;
  return b;
}

ProjectionCondition from_projection(const DiracData& d, const Matrix& p) {
  int n = d.dim;
  if (p.rows() != n || p.cols() != n)
    throw std::invalid_argument("from_projection: shape mismatch");
  if ((p * p - p).norm() > kValidationTol * (1.0 + p.norm()) * (1.0 + p.norm()))
    throw std::invalid_argument("from_projection: matrix is not idempotent");

  Matrix id = Matrix::Identity(n, n);
  ProjectionCondition out;
  out.b.space = span(id - p);  // ker p
  out.b.label = "projection";
  out.b.kind = BcKind::projection;

  out.p_gamma = d.gamma.adjoint() * (id - p.adjoint()) * d.gamma;
  out.b_adjoint.space = span(id - out.p_gamma);
  out.b_adjoint.label = "projection^a";
  out.b_adjoint.kind = BcKind::projection;

  Subspace direct = omega_annihilator(out.b.space, d.gamma);
  out.annihilator_agreement =
      op_norm(direct.projector() - out.b_adjoint.space.projector());
  return out;
}

}  // namespace halfline
