#include "halfline/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace halfline {

namespace {

// p1(z) = int_0^1 e^{zv} dv, p2(z) = int_0^1 v e^{zv} dv, for z <= 0;
// em1(z) = p1(-z), em2(z) = p2(-z), used with z >= 0 for decaying modes.
double p1(double z) {
  if (std::abs(z) < 1e-4)
    return 1.0 + z / 2 + z * z / 6 + z * z * z / 24 + z * z * z * z / 120;
  return std::expm1(z) / z;
}
double p2(double z) {
  if (std::abs(z) < 1e-4)
    return 0.5 + z / 3 + z * z / 8 + z * z * z / 30 + z * z * z * z / 144;
  return (std::expm1(z) * (z - 1.0) + z) / (z * z);
}
double em1(double z) { return p1(-z); }
double em2(double z) { return p2(-z); }

Matrix rk4_sweep(const CoefficientPath& path, Matrix y, double t0, double t1,
                 int steps, int qr_every) {
  double h = (t1 - t0) / steps;
  double t = t0;
  for (int i = 0; i < steps; ++i) {
    Matrix k1 = path.generator(t) * y;
    Matrix k2 = path.generator(t + h / 2) * (y + (h / 2) * k1);
    Matrix k3 = path.generator(t + h / 2) * (y + (h / 2) * k2);
    Matrix k4 = path.generator(t + h) * (y + h * k3);
    y += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t = t0 + (i + 1) * h;
    if (qr_every > 0 && ((i + 1) % qr_every == 0 || i + 1 == steps)) {
      Eigen::HouseholderQR<Matrix> qr(y);
      y = qr.householderQ() * Matrix::Identity(y.rows(), y.cols());
    }
  }
  return y;
}

}  // namespace

GridSection uniform_grid_section(int dim, double t0, double t1, int samples) {
  GridSection s;
  s.grid.resize(samples);
  for (int i = 0; i < samples; ++i)
    s.grid[i] = t0 + (t1 - t0) * i / (samples - 1);
  s.values = Matrix::Zero(dim, samples);
  return s;
}

CoefficientPath constant_path(const DiracData& d, double r) {
  CoefficientPath p;
  p.d = d;
  p.r = r;
  Matrix a0 = d.a0;
  p.a_of_t = [a0](double) { return a0; };
  p.lipschitz_bound = 0.0;
  p.name = "constant";
  return p;
}

PathValidation validate_path(const CoefficientPath& path, int samples) {
  PathValidation out;
  auto push = [&](const std::string& rel, double res, double tol) {
    if (!(res <= tol)) out.violations.push_back({rel, res});
  };
  const DiracData& d = path.d;
  double scale = 1.0 + d.a0.norm();
  double tol = kValidationTol * scale;

  DiracValidation dv = validate_dirac_data(d.a0, d.gamma, d.alpha);
  for (const auto& v : dv.violations) out.violations.push_back(v);

  push("a(0) matches boundary data", (path.a(0.0) - d.a0).norm(), tol);
  Matrix prev_a;
  double prev_t = 0.0;
  for (int i = 0; i < samples; ++i) {
    double t = path.r * i / (samples - 1);
    Matrix a = path.a(t);
    Matrix v = path.v(t);
    push("a(t) hermitian", (a - a.adjoint()).norm(), tol);
    push("a(t) anticommutes with gamma", (a * d.gamma + d.gamma * a).norm(), tol);
    push("v(t) hermitian", (v - v.adjoint()).norm(), tol);
    if (i > 0 && path.lipschitz_bound > 0) {
      double quot = (a - prev_a).norm() / (t - prev_t);
      push("a(t) lipschitz bound", quot, path.lipschitz_bound * (1.0 + 1e-9));
    }
    prev_a = a;
    prev_t = t;
  }
  for (double f : {1.01, 1.5, 2.0}) {
    push("a frozen beyond horizon", (path.a(path.r * f) - path.a(path.r)).norm(), tol);
    push("v zero beyond horizon", path.v(path.r * f).norm(), tol);
  }
  return out;
}

Vector extension_section(const SpectralDecomposition& dec, const Vector& x, double t) {
  Vector out = Vector::Zero(dec.ambient_dim);
  for (int j = 0; j < dec.clusters(); ++j) {
    double a = std::abs(dec.eigenvalues[j]);
    if (dec.eigenvalues[j] == 0.0) a = 1.0;  // |A| + Q_0
    out += std::exp(-t * a) * (dec.frames[j] * (dec.frames[j].adjoint() * x));
  }
  return out;
}

GridSection extension_sections(const SpectralDecomposition& dec, const Vector& x,
                               const std::vector<double>& grid) {
  GridSection s;
  s.grid = grid;
  s.values = Matrix::Zero(dec.ambient_dim, static_cast<int>(grid.size()));
  for (int i = 0; i < static_cast<int>(grid.size()); ++i)
    s.values.col(i) = extension_section(dec, x, grid[i]);
  return s;
}

InhomogeneousSolution solve_inhomogeneous(const DiracData& d, const GridSection& tau) {
  if (tau.dim() != d.dim)
    throw std::invalid_argument("solve_inhomogeneous: section dimension mismatch");
  int nt = tau.samples();
  if (nt < 2) throw std::invalid_argument("solve_inhomogeneous: need two samples");

  SpectralDecomposition dec = eigendecompose(d);
  Matrix g = d.gamma.adjoint() * tau.values;

  InhomogeneousSolution out;
  out.sigma.grid = tau.grid;
  out.sigma.values = Matrix::Zero(d.dim, nt);

  for (int j = 0; j < dec.clusters(); ++j) {
    double a = dec.eigenvalues[j];
    const Matrix& fr = dec.frames[j];
    Matrix c = fr.adjoint() * g;  // mode coordinates of the source
    if (a == 0.0) {
      double worst = 0.0;
      for (int i = 0; i < nt; ++i) worst = std::max(worst, c.col(i).norm());
      if (worst > 0) {
        out.kernel_component_ignored = true;
        out.kernel_component_norm = std::max(out.kernel_component_norm, worst);
      }
      continue;
    }
    Matrix s = Matrix::Zero(c.rows(), nt);
    if (a > 0) {
      for (int i = 0; i + 1 < nt; ++i) {
        double L = tau.grid[i + 1] - tau.grid[i];
        double z = a * L;
        s.col(i + 1) = std::exp(-z) * s.col(i) +
                       L * ((em1(z) - em2(z)) * c.col(i) + em2(z) * c.col(i + 1));
      }
    } else {
      for (int i = nt - 2; i >= 0; --i) {
        double L = tau.grid[i + 1] - tau.grid[i];
        double z = a * L;  // negative
        s.col(i) = std::exp(z) * s.col(i + 1) -
                   L * ((p1(z) - p2(z)) * c.col(i) + p2(z) * c.col(i + 1));
      }
    }
    out.sigma.values.noalias() += fr * s;
  }
  return out;
}

Matrix grid_derivative(const GridSection& s) {
  int nt = s.samples();
  if (nt < 3) throw std::invalid_argument("grid_derivative: need three samples");
  Matrix out(s.dim(), nt);
  auto stencil = [&](int base, double x, int target) {
    double x0 = s.grid[base], x1 = s.grid[base + 1], x2 = s.grid[base + 2];
    double w0 = (2 * x - x1 - x2) / ((x0 - x1) * (x0 - x2));
    double w1 = (2 * x - x0 - x2) / ((x1 - x0) * (x1 - x2));
    double w2 = (2 * x - x0 - x1) / ((x2 - x0) * (x2 - x1));
    out.col(target) = w0 * s.values.col(base) + w1 * s.values.col(base + 1) +
                      w2 * s.values.col(base + 2);
  };
  stencil(0, s.grid[0], 0);
  for (int i = 1; i + 1 < nt; ++i) stencil(i - 1, s.grid[i], i);
  stencil(nt - 3, s.grid[nt - 1], nt - 1);
  return out;
}

Representation representation_decompose(const DiracData& d, const GridSection& sigma,
                                        double tolerance) {
  SpectralDecomposition dec = eigendecompose(d);
  Matrix p_pos = spectral_projection(dec, Interval::greater(0.0)).second;
  Matrix p_ker = spectral_projection(dec, Interval::point(0.0)).second;

  Representation out;
  out.x = p_pos * sigma.values.col(0);

  Matrix dsig = grid_derivative(sigma);
  Matrix dmax = d.gamma * (dsig + d.a0 * sigma.values);
  out.tau.grid = sigma.grid;
  out.tau.values = dmax - p_ker * dmax;
  out.sigma0.grid = sigma.grid;
  out.sigma0.values = p_ker * sigma.values;

  GridSection ext = extension_sections(dec, out.x, sigma.grid);
  InhomogeneousSolution part = solve_inhomogeneous(d, out.tau);
  out.resynthesis.grid = sigma.grid;
  out.resynthesis.values = ext.values + part.sigma.values + out.sigma0.values;

  double scale = 0.0, dev = 0.0;
  for (int i = 0; i < sigma.samples(); ++i) {
    scale = std::max(scale, sigma.values.col(i).norm());
    dev = std::max(dev, (sigma.values.col(i) - out.resynthesis.values.col(i)).norm());
  }
  out.residual = dev / (1.0 + scale);
  if (out.residual > tolerance) out.diagnostic = "not in represented form";
  return out;
}

Matrix FundamentalSolution::at(double t) const {
  if (!path) throw std::logic_error("FundamentalSolution: no path attached");
  if (t < -1e-12 || t > r * (1 + 1e-12))
    throw std::invalid_argument("FundamentalSolution: time outside [0, r]");
  t = std::clamp(t, 0.0, r);
  int idx = 0;
  for (int i = 0; i < static_cast<int>(checkpoint_times.size()); ++i)
    if (checkpoint_times[i] <= t + 1e-15) idx = i;
  double t0 = checkpoint_times[idx];
  Matrix y = checkpoints[idx];
  double h = stats.step;
  double remain = t - t0;
  int whole = static_cast<int>(std::floor(remain / h + 1e-12));
  if (whole > 0) y = rk4_sweep(*path, y, t0, t0 + whole * h, whole, 0);
  double left = t - (t0 + whole * h);
  if (left > 1e-14) y = rk4_sweep(*path, y, t0 + whole * h, t, 1, 0);
  return y;
}

FundamentalSolution fundamental_solution(const CoefficientPath& path, int steps) {
  if (steps < 2 || steps % 2 != 0)
    throw std::invalid_argument("fundamental_solution: steps must be even");
  int n = path.d.dim;
  Matrix id = Matrix::Identity(n, n);

  FundamentalSolution out;
  out.r = path.r;
  out.path = &path;
  out.stats.steps = steps;
  out.stats.step = path.r / steps;

  int chunk = std::max(1, steps / 64);
  Matrix y = id;
  out.checkpoint_times.push_back(0.0);
  out.checkpoints.push_back(y);
  double t = 0.0;
  int done = 0;
  while (done < steps) {
    int take = std::min(chunk, steps - done);
    y = rk4_sweep(path, y, t, t + take * out.stats.step, take, 0);
    done += take;
    t = done * out.stats.step;
    if (done < steps) {
      out.checkpoint_times.push_back(t);
      out.checkpoints.push_back(y);
    }
  }
  out.phi_r = y;

  Matrix coarse = rk4_sweep(path, id, 0.0, path.r, steps / 2, 0);
  double rich = (out.phi_r - coarse).norm() / 7.5;
  double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                 std::sqrt(static_cast<double>(steps)) *
                 std::max(1.0, out.phi_r.norm());
  out.stats.error_estimate = rich + floor;
  return out;
}

Matrix evolve_frame(const CoefficientPath& path, const Matrix& frame, double t0,
                    double t1, int steps, int qr_every) {
  return rk4_sweep(path, frame, t0, t1, steps, qr_every);
}

namespace {

// exact integrals of |sigma|^2 and |sigma'|^2 over cells [i, j)
void pl_integrals(const GridSection& s, int i, int j, double* i_sq, double* i_dsq) {
  *i_sq = 0.0;
  *i_dsq = 0.0;
  for (int c = i; c < j; ++c) {
    double L = s.grid[c + 1] - s.grid[c];
    Complex p = s.values(0, c);
    Complex q = (s.values(0, c + 1) - s.values(0, c)) / L;
    *i_sq += L * std::norm(p) + L * L * std::real(std::conj(p) * q) +
             L * L * L * std::norm(q) / 3.0;
    *i_dsq += L * std::norm(q);
  }
}

}  // namespace

TraceCheck interval_trace_bound(double a, const GridSection& scalar, int i, int j) {
  if (scalar.dim() != 1) throw std::invalid_argument("trace bound: scalar sections only");
  if (!(0 <= i && i < j && j < scalar.samples()))
    throw std::invalid_argument("trace bound: bad sample indices");
  double isq, idsq;
  pl_integrals(scalar, i, j, &isq, &idsq);
  TraceCheck out;
  out.lhs = a * std::norm(scalar.values(0, i) - scalar.values(0, j));
  out.rhs = 2.0 * idsq + 2.0 * a * a * isq;
  out.ok = out.lhs <= out.rhs * (1.0 + 1e-12) + 1e-300;
  return out;
}

TraceCheck halfline_trace_bound(double a, const GridSection& scalar, int i) {
  if (scalar.dim() != 1) throw std::invalid_argument("trace bound: scalar sections only");
  int last = scalar.samples() - 1;
  if (!(0 <= i && i < last)) throw std::invalid_argument("trace bound: bad sample index");
  double scale = scalar.values.cwiseAbs().maxCoeff();
  if (std::abs(scalar.values(0, last)) > 1e-12 * (1.0 + scale))
    throw std::invalid_argument("halfline trace bound: section must vanish at the end");
  double isq, idsq;
  pl_integrals(scalar, i, last, &isq, &idsq);
  TraceCheck out;
  out.lhs = a * std::norm(scalar.values(0, i));
  out.rhs = idsq + a * a * isq;
  out.ok = out.lhs <= out.rhs * (1.0 + 1e-12) + 1e-300;
  return out;
}

TraceInequalityReport trace_inequality_report(double a,
                                              const std::vector<GridSection>& sections) {
  TraceInequalityReport rep;
  for (const auto& s : sections) {
    int last = s.samples() - 1;
    std::vector<std::pair<int, int>> pairs = {
        {0, last}, {0, last / 2}, {last / 2, last}, {last / 4, (3 * last) / 4}};
    for (auto [i, j] : pairs) {
      if (i >= j) continue;
      TraceCheck c = interval_trace_bound(a, s, i, j);
      ++rep.checked;
      if (!c.ok) ++rep.violations;
      if (c.rhs > 0) rep.worst_ratio = std::max(rep.worst_ratio, c.lhs / c.rhs);
    }
    double scale = s.values.cwiseAbs().maxCoeff();
    if (std::abs(s.values(0, last)) <= 1e-12 * (1.0 + scale)) {
      for (int i : {0, last / 3, last / 2}) {
        if (i >= last) continue;
        TraceCheck c = halfline_trace_bound(a, s, i);
        ++rep.checked;
        if (!c.ok) ++rep.violations;
        if (c.rhs > 0) rep.worst_ratio = std::max(rep.worst_ratio, c.lhs / c.rhs);
      }
    }
  }
  return rep;
}

}  // namespace halfline
