#include "halfline/subspace.hpp"

#include <algorithm>
#include <cmath>

namespace halfline {

namespace {

// Columns of the full left singular basis split by the rank cut.
struct SvdSplit {
  Matrix range;       // orthonormal frame of the column span
  Matrix null_right;  // orthonormal frame of the right null space
  int rank;
};

SvdSplit svd_split(const Matrix& m, double rank_tol) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cut = (sv.size() > 0) ? rank_tol * sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut && sv(i) > 0) ++rank;
  SvdSplit out;
  out.rank = rank;
  out.range = svd.matrixU().leftCols(rank);
  out.null_right = svd.matrixV().rightCols(m.cols() - rank);
  return out;
}

// Image of a subspace under m with the rank cut anchored at the scale of m,
// so directions m kills entirely read as zero instead of as noise vectors.
Subspace image_with_scale(const Matrix& m, const Subspace& s, double scale) {
  int n = static_cast<int>(m.rows());
  if (s.dim() == 0) return zero_subspace(n, s.rank_tol);
  Matrix mapped = m * s.frame;
  Eigen::JacobiSVD<Matrix> svd(mapped, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  double cut = s.rank_tol * std::max(sv(0), scale);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  if (rank == 0) return zero_subspace(n, s.rank_tol);
  return {n, svd.matrixU().leftCols(rank), s.rank_tol};
}

// Range of an idempotent. The rank equals trace exactly (eigenvalues are 0/1,
// obliqueness allowed), which stays stable where a relative singular-value cut
// would misread a numerically zero I-P as rank one.
Subspace idempotent_range(const Matrix& p, double rank_tol) {
  int n = static_cast<int>(p.rows());
  long r = std::lround(p.trace().real());
  if (r <= 0) return zero_subspace(n, rank_tol);
  if (r >= n) return full_subspace(n, rank_tol);
  Eigen::JacobiSVD<Matrix> svd(p, Eigen::ComputeFullU);
  return {n, svd.matrixU().leftCols(r), rank_tol};
}

}  // namespace

Subspace zero_subspace(int ambient_dim, double rank_tol) {
  return {ambient_dim, Matrix(ambient_dim, 0), rank_tol};
}

Subspace full_subspace(int ambient_dim, double rank_tol) {
  return {ambient_dim, Matrix::Identity(ambient_dim, ambient_dim), rank_tol};
}

Subspace span(const Matrix& vectors, double rank_tol) {
  if (vectors.cols() == 0)
    return zero_subspace(static_cast<int>(vectors.rows()), rank_tol);
  SvdSplit s = svd_split(vectors, rank_tol);
  return {static_cast<int>(vectors.rows()), s.range, rank_tol};
}

Subspace orthogonal_complement(const Subspace& s) {
  if (s.dim() == 0) return full_subspace(s.ambient_dim, s.rank_tol);
  if (s.dim() == s.ambient_dim) return zero_subspace(s.ambient_dim, s.rank_tol);
  Eigen::JacobiSVD<Matrix> svd(s.frame, Eigen::ComputeFullU);
  return {s.ambient_dim, svd.matrixU().rightCols(s.ambient_dim - s.dim()),
          s.rank_tol};
}

Subspace intersect(const Subspace& f, const Subspace& g) {
  double tol = std::max(f.rank_tol, g.rank_tol);
  if (f.dim() == 0 || g.dim() == 0) return zero_subspace(f.ambient_dim, tol);
  // x in F cap G iff x = F a = G b; the (a, -b) are the right null vectors
  // of [F G]. The small singular values scale linearly with the principal
  // angles, which keeps the rank cut well conditioned.
  Matrix concat(f.ambient_dim, f.dim() + g.dim());
  concat << f.frame, g.frame;
  SvdSplit s = svd_split(concat, tol);
  Matrix coeff = s.null_right.topRows(f.dim());
  if (coeff.cols() == 0) return zero_subspace(f.ambient_dim, tol);
  return span(f.frame * coeff, tol);
}

Subspace sum(const Subspace& f, const Subspace& g) {
  double tol = std::max(f.rank_tol, g.rank_tol);
  Matrix concat(f.ambient_dim, f.dim() + g.dim());
  if (concat.cols() == 0) return zero_subspace(f.ambient_dim, tol);
  concat << f.frame, g.frame;
  return span(concat, tol);
}

Subspace image_under(const Matrix& m, const Subspace& s) {
  return span(m * s.frame, s.rank_tol);
}

Subspace restrict_to(const Subspace& s, const Subspace& h) {
  double defect = containment_defect(h, s);
  if (defect > 10 * std::max(s.rank_tol, h.rank_tol))
    throw std::invalid_argument(
        "restrict_to: subspace is not contained in the given ambient, defect " +
        std::to_string(defect));
  return span(h.frame.adjoint() * s.frame, s.rank_tol);
}

PairReport pair_report(const Subspace& f, const Subspace& g) {
  if (f.ambient_dim != g.ambient_dim)
    throw std::invalid_argument("pair_report: ambient dimensions differ");
  double tol = std::max(f.rank_tol, g.rank_tol);
  long n = f.ambient_dim;
  long rank_sum;
  if (f.dim() + g.dim() == 0) {
    rank_sum = 0;
  } else {
    Matrix concat(f.ambient_dim, f.dim() + g.dim());
    concat << f.frame, g.frame;
    rank_sum = svd_split(concat, tol).rank;
  }
  PairReport r;
  r.nullity = f.dim() + g.dim() - rank_sum;
  r.deficiency = n - rank_sum;
  r.index = r.nullity - r.deficiency;
  return r;
}

bool same_space(const Subspace& f, const Subspace& g) {
  if (f.ambient_dim != g.ambient_dim || f.dim() != g.dim()) return false;
  double tol = 10 * std::max(f.rank_tol, g.rank_tol);
  return op_norm(f.projector() - g.projector()) <= tol;
}

double containment_defect(const Subspace& f, const Subspace& g) {
  if (g.dim() == 0) return 0.0;
  return op_norm(g.frame - f.frame * (f.frame.adjoint() * g.frame));
}

bool contains(const Subspace& f, const Subspace& g) {
  return containment_defect(f, g) <= 10 * std::max(f.rank_tol, g.rank_tol);
}

Subspace omega_annihilator(const Subspace& b, const Matrix& gamma) {
  if (gamma.rows() != b.ambient_dim)
    throw std::invalid_argument("omega_annihilator: gamma dimension mismatch");
  return image_under(gamma, orthogonal_complement(b));
}

ProjectionReduction reduce_by_projection(const Subspace& b, const Matrix& p) {
  int n = b.ambient_dim;
  if (p.rows() != n || p.cols() != n)
    throw std::invalid_argument("reduce_by_projection: projection shape");
  double idem = (p * p - p).norm();
  if (idem > kValidationTol * (1.0 + p.norm()) * (1.0 + p.norm()))
    throw std::invalid_argument("reduce_by_projection: matrix is not idempotent");

  Matrix ip = Matrix::Identity(n, n) - p;
  ProjectionReduction out;
  out.reduced = image_with_scale(ip, b, op_norm(ip));
  out.kernel = idempotent_range(ip, b.rank_tol);  // ker P = im(I-P)
  out.image = idempotent_range(p, b.rank_tol);
  out.pair_with_image = pair_report(b, out.image);

  Subspace cut = intersect(out.kernel, sum(b, out.image));
  out.space_identity = same_space(out.reduced, cut);

  out.codim_in_kernel = out.kernel.dim() - out.reduced.dim();
  out.codim_of_sum = n - sum(b, out.image).dim();
  out.codim_identity = (out.codim_in_kernel == out.codim_of_sum);

  out.map_nullity = intersect(b, out.image).dim();
  out.map_index = out.map_nullity - out.codim_in_kernel;
  out.index_identity = (out.map_index == out.pair_with_image.index);
  return out;
}

StabilityShift stability_shift(const Subspace& b, const Matrix& p, const Matrix& q) {
  int n = b.ambient_dim;
  Matrix iq = Matrix::Identity(n, n) - q;
  Subspace im_p = idempotent_range(p, b.rank_tol);
  Subspace im_q = idempotent_range(q, b.rank_tol);
  Subspace ker_q = idempotent_range(iq, b.rank_tol);
  StabilityShift out;
  out.ind_with_p = pair_report(b, im_p).index;
  out.ind_with_q = pair_report(b, im_q).index;
  out.shift = pair_report(ker_q, im_p).index;
  out.identity = (out.ind_with_p == out.ind_with_q + out.shift);
  return out;
}

}  // namespace halfline
