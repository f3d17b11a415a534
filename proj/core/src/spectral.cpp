#include "halfline/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "halfline/rng.hpp"

namespace halfline {

namespace {

void check_square(const Matrix& m, const char* name) {
  if (m.rows() != m.cols())
    throw std::invalid_argument(std::string(name) + " is not square");
}

}  // namespace

DiracValidation validate_dirac_data(const Matrix& a0, const Matrix& gamma,
                                    const std::optional<Matrix>& alpha,
                                    double tol) {
  check_square(a0, "a0");
  check_square(gamma, "gamma");
  if (gamma.rows() != a0.rows())
    throw std::invalid_argument("a0 and gamma dimensions differ");
  if (alpha) {
    check_square(*alpha, "alpha");
    if (alpha->rows() != a0.rows())
      throw std::invalid_argument("alpha dimension differs");
  }
  int n = static_cast<int>(a0.rows());
  if (n == 0 || n % 2 != 0)
    throw std::invalid_argument("dimension must be even and positive");

  if (tol < 0) {
    double scale = std::max(a0.norm(), gamma.norm());
    if (alpha) scale = std::max(scale, alpha->norm());
    tol = kValidationTol * (1.0 + scale);
  }

  DiracValidation out;
  auto check = [&](const std::string& relation, double residual) {
    if (!(residual <= tol)) out.violations.push_back({relation, residual});
  };

  Matrix id = Matrix::Identity(n, n);
  check("a0 hermitian", (a0 - a0.adjoint()).norm());
  check("gamma skew adjoint", (gamma + gamma.adjoint()).norm());
  check("gamma squares to -1", (gamma * gamma + id).norm());
  check("a0 anticommutes with gamma", (a0 * gamma + gamma * a0).norm());

  {
    Eigen::SelfAdjointEigenSolver<Matrix> es((a0 + a0.adjoint()) / 2.0);
    const auto& ev = es.eigenvalues();
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      worst = std::max(worst, std::abs(ev(i) + ev(n - 1 - i)));
    check("spectrum symmetric about 0", worst);
  }

  if (alpha) {
    const Matrix& al = *alpha;
    check("alpha hermitian", (al - al.adjoint()).norm());
    check("alpha squares to 1", (al * al - id).norm());
    check("alpha anticommutes with gamma", (al * gamma + gamma * al).norm());
    check("alpha commutes with a0", (al * a0 - a0 * al).norm());
  }

  if (out.ok()) {
    DiracData d;
    d.dim = n;
    d.a0 = a0;
    d.gamma = gamma;
    d.alpha = alpha;
    d.tol = tol;
    out.data = std::move(d);
  }
  return out;
}

SpectralDecomposition eigendecompose(const Matrix& a, double cluster_tol) {
  check_square(a, "a");
  if (cluster_tol < 0) cluster_tol = kClusterTol * (1.0 + a.norm());
  Eigen::SelfAdjointEigenSolver<Matrix> es((a + a.adjoint()) / 2.0);
  const auto& ev = es.eigenvalues();
  const Matrix& vec = es.eigenvectors();
  int n = static_cast<int>(a.rows());

  SpectralDecomposition dec;
  dec.cluster_tol = cluster_tol;
  dec.ambient_dim = n;
  int start = 0;
  while (start < n) {
    int stop = start + 1;
    while (stop < n && ev(stop) - ev(stop - 1) <= cluster_tol) ++stop;
    double mean = 0.0;
    for (int i = start; i < stop; ++i) mean += ev(i);
    mean /= (stop - start);
    // snap near-zero clusters so that kernels are exact
    if (std::abs(mean) <= cluster_tol) mean = 0.0;
    dec.eigenvalues.push_back(mean);
    dec.frames.push_back(vec.middleCols(start, stop - start));
    dec.cluster_min.push_back(ev(start));
    dec.cluster_max.push_back(ev(stop - 1));
    start = stop;
  }
  return dec;
}

SpectralDecomposition eigendecompose(const DiracData& d) {
  return eigendecompose(d.a0, -1.0);
}

std::pair<Subspace, Matrix> spectral_projection(const SpectralDecomposition& dec,
                                                const Interval& window,
                                                double rank_tol) {
  int n = dec.ambient_dim;
  double tol = dec.cluster_tol;
  std::vector<int> picked;
  for (int j = 0; j < dec.clusters(); ++j) {
    double mn = dec.cluster_min[j], mx = dec.cluster_max[j];
    // an endpoint is "on" the cluster when the whole cluster sits within
    // cluster_tol of it; touching only part of the cluster is a cut
    auto classify = [&](double e) {
      if (!std::isfinite(e) || e < mn - tol || e > mx + tol) return 0;
      if (e - mn <= tol && mx - e <= tol) return 1;
      throw spectral_cut_error("spectral cut through eigenvalue near " +
                               std::to_string(dec.eigenvalues[j]));
    };
    int on_lo = classify(window.lo);
    int on_hi = classify(window.hi);
    bool in;
    if (on_lo)
      in = window.lo_closed && (on_hi ? window.hi_closed : dec.eigenvalues[j] < window.hi);
    else if (on_hi)
      in = window.hi_closed && dec.eigenvalues[j] > window.lo;
    else
      in = dec.eigenvalues[j] > window.lo && dec.eigenvalues[j] < window.hi;
    if (in) picked.push_back(j);
  }

  int total = 0;
  for (int j : picked) total += dec.multiplicity(j);
  Matrix frame(n, total);
  int col = 0;
  for (int j : picked) {
    frame.middleCols(col, dec.multiplicity(j)) = dec.frames[j];
    col += dec.multiplicity(j);
  }
  Subspace s{n, frame, rank_tol};
  return {s, s.projector()};
}

SobolevWeight sobolev_weight(const SpectralDecomposition& dec, double s) {
  int n = dec.ambient_dim;
  Matrix w = Matrix::Zero(n, n);
  for (int j = 0; j < dec.clusters(); ++j) {
    double a = dec.eigenvalues[j];
    double f = std::pow(1.0 + a * a, s / 2.0);
    w.noalias() += f * dec.frames[j] * dec.frames[j].adjoint();
  }
  return {s, w};
}

Complex sobolev_pair(const SpectralDecomposition& dec, const Vector& x,
                     const Vector& y, double s) {
  Matrix wp = sobolev_weight(dec, s).weight;
  Matrix wm = sobolev_weight(dec, -s).weight;
  return (wp * x).dot(wm * y);
}

double sobolev_norm(const SpectralDecomposition& dec, const Vector& x, double s) {
  return (sobolev_weight(dec, s).weight * x).norm();
}

ChiralitySplit chirality_split(const DiracData& d) {
  Matrix ig = Complex(0, 1) * d.gamma;  // hermitian involution
  SpectralDecomposition dec = eigendecompose(ig, 0.5);
  ChiralitySplit out;
  out.plus = zero_subspace(d.dim);
  out.minus = zero_subspace(d.dim);
  for (int j = 0; j < dec.clusters(); ++j) {
    if (dec.eigenvalues[j] > 0)
      out.plus = sum(out.plus, Subspace{d.dim, dec.frames[j], kRankTol});
    else
      out.minus = sum(out.minus, Subspace{d.dim, dec.frames[j], kRankTol});
  }
  out.chiral_index = out.plus.dim() - out.minus.dim();
  return out;
}

DiracData random_system(int dim, const std::vector<double>& spectrum,
                        std::uint64_t seed) {
  if (dim <= 0 || dim % 2 != 0)
    throw std::invalid_argument("random_system: dimension must be even");
  if (static_cast<int>(spectrum.size()) != dim)
    throw std::invalid_argument("random_system: spectrum size must equal dim");

  std::vector<double> sorted = spectrum;
  std::sort(sorted.begin(), sorted.end());
  double scale = 1.0 + std::abs(sorted.front()) + std::abs(sorted.back());
  for (int i = 0; i < dim; ++i)
    if (std::abs(sorted[i] + sorted[dim - 1 - i]) > 1e-12 * scale)
      throw std::invalid_argument("random_system: spectrum is not symmetric");

  int zeros = 0;
  for (double v : sorted)
    if (v == 0.0) ++zeros;
  if (zeros % 2 != 0)
    throw std::invalid_argument("random_system: zeros must come in pairs");

  int h = dim / 2;
  std::vector<double> upper(sorted.begin() + h, sorted.end());  // >= 0 half

  Rng rng(seed);
  // B = W diag(upper) W^* with W Haar; U = exp(i [[P,-Q],[Q,P]]) commutes
  // with gamma for P hermitian, Q skew.
  Matrix w = rng.haar_unitary(h);
  Matrix b = Matrix::Zero(h, h);
  for (int i = 0; i < h; ++i) b += upper[i] * w.col(i) * w.col(i).adjoint();
  b = (b + b.adjoint()) / 2.0;

  Matrix p = rng.hermitian(h);
  Matrix qg = rng.complex_gaussian_matrix(h, h);
  Matrix q = (qg - qg.adjoint()) / 2.0;
  Matrix x(dim, dim);
  x << p, -q, q, p;
  x = (x + x.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(x);
  Matrix u = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    Complex phase = std::exp(Complex(0, es.eigenvalues()(i)));
    u += phase * es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  }

  Matrix a_tilde = Matrix::Zero(dim, dim);
  a_tilde.topLeftCorner(h, h) = b;
  a_tilde.bottomRightCorner(h, h) = -b;
  Matrix alpha_tilde = Matrix::Zero(dim, dim);
  alpha_tilde.topLeftCorner(h, h) = Matrix::Identity(h, h);
  alpha_tilde.bottomRightCorner(h, h) = -Matrix::Identity(h, h);

  Matrix gamma = Matrix::Zero(dim, dim);
  gamma.topRightCorner(h, h) = -Matrix::Identity(h, h);
  gamma.bottomLeftCorner(h, h) = Matrix::Identity(h, h);

  DiracData d;
  d.dim = dim;
  d.a0 = u * a_tilde * u.adjoint();
  d.a0 = (d.a0 + d.a0.adjoint()) / 2.0;
  d.gamma = gamma;
  d.alpha = u * alpha_tilde * u.adjoint();
  d.alpha = ((*d.alpha) + d.alpha->adjoint()) / 2.0;
  d.tol = kValidationTol * (1.0 + d.a0.norm());
  return d;
}

DiracData random_system(int dim, int kernel_dim, std::uint64_t seed) {
  if (kernel_dim < 0 || kernel_dim % 2 != 0 || kernel_dim > dim)
    throw std::invalid_argument("random_system: kernel_dim must be even");
  Rng rng(splitmix64(seed));
  std::vector<double> spec(dim, 0.0);
  int pairs = (dim - kernel_dim) / 2;
  for (int i = 0; i < pairs; ++i) {
    double u = rng.uniform(0.5, 3.0);
    spec[i] = -u;
    spec[dim - 1 - i] = u;
  }
  std::sort(spec.begin(), spec.end());
  return random_system(dim, spec, seed);
}

}  // namespace halfline
