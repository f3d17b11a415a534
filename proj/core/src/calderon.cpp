#include "halfline/calderon.hpp"

#include <algorithm>
#include <cmath>

namespace halfline {

namespace {

struct TailFrames {
  Subspace bounded;   // H_{>= 0} of a(r)
  Subspace decaying;  // H_{> 0} of a(r)
};

TailFrames tail_frames(const CoefficientPath& path) {
  SpectralDecomposition dec = eigendecompose(path.a(path.r));
  TailFrames tf;
  tf.bounded = spectral_projection(dec, Interval::at_least(0.0)).first;
  tf.decaying = spectral_projection(dec, Interval::greater(0.0)).first;
  return tf;
}

Subspace transport_back(const CoefficientPath& path, const Subspace& tail,
                        const EvolveOptions& opt) {
  if (tail.dim() == 0) return zero_subspace(tail.ambient_dim);
  Matrix f = evolve_frame(path, tail.frame, path.r, 0.0, opt.steps,
                          std::max(1, opt.qr_every));
  Subspace s;
  s.ambient_dim = tail.ambient_dim;
  s.frame = f;
  return s;
}

CalderonPair assemble(const DiracData& d, Subspace c_ext, Subspace c_max) {
  CalderonPair cp;
  cp.c_ext = std::move(c_ext);
  cp.c_max = std::move(c_max);
  cp.p_ext = cp.c_ext.projector();
  Matrix id = Matrix::Identity(d.dim, d.dim);
  cp.p_max = d.gamma.adjoint() * (id - cp.p_ext) * d.gamma;
  cp.duality_residual = op_norm(cp.p_max - cp.c_max.projector());
  cp.tail_kernel_dim = cp.c_ext.dim() - cp.c_max.dim();
  return cp;
}

}  // namespace

CalderonPair calderon_subspaces(const CoefficientPath& path, EvolveOptions opt) {
  TailFrames tf = tail_frames(path);
  // without a tail kernel the two frames are the same columns, so one
  // transport serves both spaces; the duality residual still compares the
  // result against its gamma dual
  bool no_kernel = tf.bounded.dim() == tf.decaying.dim();
  Subspace ext = transport_back(path, tf.bounded, opt);
  Subspace mx = no_kernel ? ext : transport_back(path, tf.decaying, opt);
  CalderonPair cp = assemble(path.d, std::move(ext), std::move(mx));
  EvolveOptions fine = opt;
  fine.steps = 2 * opt.steps;
  Subspace ext2 = transport_back(path, tf.bounded, fine);
  Subspace max2 = no_kernel ? ext2 : transport_back(path, tf.decaying, fine);
  cp.cross_check = std::max(op_norm(cp.p_ext - ext2.projector()),
                            op_norm(cp.c_max.projector() - max2.projector()));
  return cp;
}

CalderonPair constant_calderon(const DiracData& d) {
  SpectralDecomposition dec = eigendecompose(d);
  return assemble(d, spectral_projection(dec, Interval::at_least(0.0)).first,
                  spectral_projection(dec, Interval::greater(0.0)).first);
}

namespace {

void eigenframe(const SpectralDecomposition& dec, bool upper, double lambda,
                Matrix* frame, RealVector* evs) {
  std::vector<int> cols;
  for (int j = 0; j < dec.clusters(); ++j)
    if ((dec.eigenvalues[j] > lambda) == upper) cols.push_back(j);
  int total = 0;
  for (int j : cols) total += dec.multiplicity(j);
  frame->resize(dec.ambient_dim, total);
  evs->resize(total);
  int at = 0;
  for (int j : cols) {
    int m = dec.multiplicity(j);
    frame->middleCols(at, m) = dec.frames[j];
    evs->segment(at, m).setConstant(dec.eigenvalues[j]);
    at += m;
  }
}

}  // namespace

GraphData graph_representation(const Subspace& c_ext, const SpectralDecomposition& dec,
                               double lambda, double rank_tol) {
  GraphData g;
  g.lambda = lambda;
  eigenframe(dec, true, lambda, &g.f_gt, &g.evs_gt);
  eigenframe(dec, false, lambda, &g.f_le, &g.evs_le);

  int m = static_cast<int>(g.f_gt.cols());
  Matrix cross = g.f_gt.adjoint() * c_ext.frame;
  int rank = 0;
  if (cross.size() > 0) {
    Eigen::JacobiSVD<Matrix> svd(cross);
    double cut = rank_tol * (svd.singularValues().size() ? svd.singularValues()(0) : 0.0);
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > cut) ++rank;
  }
  if (rank < m) throw graph_error("graph representation unavailable at this level", m - rank);

  Subspace h_le;
  h_le.ambient_dim = dec.ambient_dim;
  h_le.frame = g.f_le;
  g.k_lambda = intersect(c_ext, h_le);

  Matrix rest = c_ext.frame;
  if (g.k_lambda.dim() > 0)
    rest -= g.k_lambda.projector() * c_ext.frame;
  // rest comes from an orthonormal frame, so the rank cut is anchored at
  // unit scale; a relative cut would read pure roundoff as full rank
  Eigen::JacobiSVD<Matrix> rsvd(rest, Eigen::ComputeFullU);
  int rrank = 0;
  for (int i = 0; i < rsvd.singularValues().size(); ++i)
    if (rsvd.singularValues()(i) > rank_tol) ++rrank;
  g.graph_part =
      Subspace{dec.ambient_dim, rsvd.matrixU().leftCols(rrank), rank_tol};
  if (g.graph_part.dim() != m)
    throw graph_error("graph part has unexpected dimension",
                      m - g.graph_part.dim());

  Matrix a1 = g.f_gt.adjoint() * g.graph_part.frame;  // m x m, invertible here
  g.t_coords = (g.f_le.adjoint() * g.graph_part.frame) * a1.inverse();
  g.t_full = g.f_le * g.t_coords * g.f_gt.adjoint();
  return g;
}

double smallest_admissible_level(const Subspace& c_ext, const SpectralDecomposition& dec,
                                 double rank_tol) {
  std::vector<double> levels = {0.0};
  for (int j = 0; j + 1 < dec.clusters(); ++j) {
    double mid = (dec.eigenvalues[j] + dec.eigenvalues[j + 1]) / 2;
    if (mid > 0) levels.push_back(mid);
  }
  levels.push_back(dec.eigenvalues.empty() ? 1.0 : dec.eigenvalues.back() + 1.0);
  std::sort(levels.begin(), levels.end());
  for (double lev : levels) {
    try {
      graph_representation(c_ext, dec, lev, rank_tol);
      return lev;
    } catch (const graph_error&) {
    }
  }
  throw graph_error("no admissible level found", -1);
}

Matrix block_graph_projection(const GraphData& g) {
  int m = static_cast<int>(g.f_gt.cols());
  int n = static_cast<int>(g.f_gt.rows());
  if (m == 0) return Matrix::Zero(n, n);
  Matrix y = g.f_gt + g.f_le * g.t_coords;
  Matrix gram = Matrix::Identity(m, m) + g.t_coords.adjoint() * g.t_coords;
  return y * gram.inverse() * y.adjoint();
}

Matrix reconstructed_ext_projection(const GraphData& g) {
  return g.k_lambda.projector() + block_graph_projection(g);
}

std::vector<ScanRow> decay_scan(const Subspace& c_ext, const SpectralDecomposition& dec,
                                const std::vector<double>& lambdas,
                                const std::vector<double>& s_values) {
  if (lambdas.size() < 4)
    throw std::invalid_argument(
        "decay_scan: at least 4 levels are needed for a slope fit");
  std::vector<ScanRow> rows;
  for (double lambda : lambdas) {
    GraphData g = graph_representation(c_ext, dec, lambda);
    Matrix range = g.f_le * g.t_coords;  // image frame of T over H_{> lambda}
    Matrix p_mid = spectral_projection(dec, Interval::closed(-lambda, lambda)).second;
    Matrix p_far = spectral_projection(dec, Interval::less(-lambda)).second;
    for (double s : s_values) {
      Matrix w = sobolev_weight(dec, s).weight;
      Matrix dsrc = Matrix::Zero(range.cols(), range.cols());
      for (int i = 0; i < g.evs_gt.size(); ++i)
        dsrc(i, i) = std::pow(1.0 + g.evs_gt(i) * g.evs_gt(i), -s / 2);
      ScanRow row;
      row.lambda = lambda;
      row.s = s;
      row.norm_mid = op_norm(w * p_mid * range * dsrc);
      row.norm_far = op_norm(w * p_far * range * dsrc);
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<SlopeFit> fit_decay_slopes(const std::vector<ScanRow>& rows) {
  std::vector<double> s_seen;
  for (const auto& r : rows)
    if (std::find(s_seen.begin(), s_seen.end(), r.s) == s_seen.end())
      s_seen.push_back(r.s);

  std::vector<SlopeFit> fits;
  for (double s : s_seen) {
    std::vector<double> x, ymid, yfar;
    double peak_mid = 0.0, peak_far = 0.0;
    for (const auto& r : rows) {
      if (r.s != s) continue;
      x.push_back(std::log(r.lambda));
      ymid.push_back(std::log(std::max(r.norm_mid, 1e-300)));
      yfar.push_back(std::log(std::max(r.norm_far, 1e-300)));
      peak_mid = std::max(peak_mid, r.norm_mid);
      peak_far = std::max(peak_far, r.norm_far);
    }
    if (x.size() < 2) continue;
    auto slope = [&](const std::vector<double>& y) {
      double n = static_cast<double>(x.size());
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
      }
      return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    SlopeFit fit;
    fit.s = s;
    fit.mid_zero = peak_mid <= 1e-13;
    fit.far_zero = peak_far <= 1e-13;
    fit.slope_mid = fit.mid_zero ? 0.0 : slope(ymid);
    fit.slope_far = fit.far_zero ? 0.0 : slope(yfar);
    fits.push_back(fit);
  }
  return fits;
}

}  // namespace halfline
