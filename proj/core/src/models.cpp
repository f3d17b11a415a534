#include "halfline/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace halfline {

namespace {

constexpr double kEulerGamma = 0.57721566490153286;

Matrix block_diag_repeat(const Matrix& block, int copies) {
  int b = static_cast<int>(block.rows());
  Matrix out = Matrix::Zero(b * copies, b * copies);
  for (int k = 0; k < copies; ++k) out.block(b * k, b * k, b, b) = block;
  return out;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
  double m = (a + b) / 2;
  double lm = (a + m) / 2, rm = (m + b) / 2;
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6 * (fa + 4 * flm + fm);
  double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15 * tol)
    return left + right + (left + right - whole) / 15;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-10) {
  double fa = f(a), fb = f(b), fm = f((a + b) / 2);
  double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

double expint_e1(double x) {
  if (x <= 0) throw std::invalid_argument("expint_e1: positive argument required");
  if (x <= 1.0) {
    double sum = 0.0, term = 1.0;
    for (int n = 1; n <= 60; ++n) {
      term *= -x / n;
      sum += -term / n;
      if (std::abs(term / n) < 1e-18) break;
    }
    return -kEulerGamma - std::log(x) + sum;
  }
  double b = x + 1.0, c = 1e300, d = 1.0 / b, h = d;
  for (int i = 1; i <= 200; ++i) {
    double ai = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (ai * d + b);
    c = b + ai / c;
    double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x);
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

CoefficientPath hyperbolic_even_path(int K, double r) {
  if (K < 1) throw std::invalid_argument("hyperbolic_even_path: K >= 1 required");
  if (r <= 0) r = std::log(static_cast<double>(K)) + 1.0;
  int n = 4 * K;

  Matrix gamma_block = Matrix::Zero(4, 4);
  gamma_block.topRightCorner(2, 2) = -Matrix::Identity(2, 2);
  gamma_block.bottomLeftCorner(2, 2) = Matrix::Identity(2, 2);

  auto a_at = [K, n](double t) {
    Matrix a = Matrix::Zero(n, n);
    for (int k = 1; k <= K; ++k) {
      Matrix b(2, 2);
      b << 1.0, Complex(0, k * std::exp(-t)), Complex(0, -k * std::exp(-t)), 1.0;
      a.block(4 * (k - 1), 4 * (k - 1), 2, 2) = b;
      a.block(4 * (k - 1) + 2, 4 * (k - 1) + 2, 2, 2) = -b;
    }
    return a;
  };

  // |a'(t)|_F = 2 e^{-t} sqrt(sum k^2), largest at t = 0
  double lip = 0.0;
  for (int k = 1; k <= K; ++k) lip += static_cast<double>(k) * k;

  CoefficientPath p;
  p.d.dim = n;
  p.d.a0 = a_at(0.0);
  p.d.gamma = block_diag_repeat(gamma_block, K);
  p.r = r;
  p.a_of_t = a_at;
  p.lipschitz_bound = 2.0 * std::sqrt(lip);
  p.name = "hyperbolic even";
  return p;
}

CoefficientPath hyperbolic_odd_path(int K, double horizon) {
  if (K < 1) throw std::invalid_argument("hyperbolic_odd_path: K >= 1 required");
  int n = 2 * K;
  Matrix gamma_block(2, 2);
  gamma_block << 0.0, -1.0, 1.0, 0.0;

  auto a_at = [K, n](double t) {
    Matrix a = Matrix::Zero(n, n);
    for (int k = 1; k <= K; ++k) {
      a(2 * (k - 1), 2 * (k - 1)) = k * std::exp(-t);
      a(2 * (k - 1) + 1, 2 * (k - 1) + 1) = -k * std::exp(-t);
    }
    return a;
  };

  // |a'(t)|_F = e^{-t} sqrt(2 sum k^2), largest at t = 0
  double lip = 0.0;
  for (int k = 1; k <= K; ++k) lip += static_cast<double>(k) * k;

  CoefficientPath p;
  p.d.dim = n;
  p.d.a0 = a_at(0.0);
  p.d.gamma = block_diag_repeat(gamma_block, K);
  p.r = horizon;
  p.a_of_t = a_at;
  p.lipschitz_bound = std::sqrt(2.0 * lip);
  p.name = "hyperbolic odd";
  return p;
}

CoefficientPath cylinder_family(int K, double coupling, double r) {
  if (K < 1) throw std::invalid_argument("cylinder_family: K >= 1 required");
  int n = 2 * K;
  Matrix a0 = Matrix::Zero(n, n);
  for (int k = 1; k <= K; ++k) {
    a0(k - 1, k - 1) = k;
    a0(K + k - 1, K + k - 1) = -static_cast<double>(k);
  }
  Matrix gamma = Matrix::Zero(n, n);
  gamma.topRightCorner(K, K) = -Matrix::Identity(K, K);
  gamma.bottomLeftCorner(K, K) = Matrix::Identity(K, K);

  Matrix hop = Matrix::Zero(K, K);
  for (int i = 0; i + 1 < K; ++i) {
    hop(i, i + 1) = 1.0;
    hop(i + 1, i) = 1.0;
  }
  Matrix vfull = Matrix::Zero(n, n);
  vfull.topLeftCorner(K, K) = hop;
  vfull.bottomRightCorner(K, K) = hop;

  CoefficientPath p;
  p.d.dim = n;
  p.d.a0 = a0;
  p.d.gamma = gamma;
  p.d.tol = kValidationTol * (1.0 + a0.norm());
  p.r = r;
  p.a_of_t = [a0](double) { return a0; };
  p.v_of_t = [coupling, r, vfull](double t) {
    double env = std::sin(M_PI * t / r);
    return (coupling * env * env) * vfull;
  };
  p.lipschitz_bound = std::abs(coupling) * (M_PI / r) * op_norm(vfull) + 1e-9;
  p.name = "cylinder";
  return p;
}

EvenModelReport hyperbolic_even_model(int K, EvolveOptions opt) {
  CoefficientPath path = hyperbolic_even_path(K);
  CalderonPair cp = calderon_subspaces(path, opt);

  EvenModelReport rep;
  rep.K = K;
  rep.r = path.r;
  rep.predicted_count = K - 1;
  rep.duality_residual = cp.duality_residual;

  SpectralDecomposition dec = eigendecompose(path.d);
  Subspace strict_negative = spectral_projection(dec, Interval::less(0.0)).first;
  rep.computed_count = intersect(strict_negative, cp.c_ext).dim();

  // each block evolves inside its upper and lower pair separately, so the
  // Cauchy space is the direct sum of the upper pairs
  Matrix analytic = Matrix::Zero(path.d.dim, path.d.dim);
  for (int k = 0; k < K; ++k) {
    analytic(4 * k, 4 * k) = 1.0;
    analytic(4 * k + 1, 4 * k + 1) = 1.0;
  }
  rep.analytic_residual = op_norm(cp.p_ext - analytic);
  return rep;
}

OddModelReport hyperbolic_odd_model(int K, const std::vector<double>& horizons) {
  if (horizons.size() < 2)
    throw std::invalid_argument("hyperbolic_odd_model: need at least two horizons");
  double t_max = *std::max_element(horizons.begin(), horizons.end());
  CoefficientPath path = hyperbolic_odd_path(K, t_max);

  OddModelReport rep;
  rep.K = K;
  rep.horizons = horizons;
  rep.integrals.resize(K, static_cast<int>(horizons.size()));

  for (int k = 1; k <= K; ++k) {
    auto density = [k](double t) {
      double f = std::exp(-k * std::exp(-t));
      return f * f;
    };
    for (size_t j = 0; j < horizons.size(); ++j)
      rep.integrals(k - 1, static_cast<int>(j)) = integrate(density, 0.0, horizons[j]);
  }

  std::vector<double> logt;
  for (double t : horizons) logt.push_back(std::log(t));
  for (int k = 0; k < K; ++k) {
    std::vector<double> logi;
    for (size_t j = 0; j < horizons.size(); ++j)
      logi.push_back(std::log(rep.integrals(k, static_cast<int>(j))));
    rep.slopes.push_back(ls_slope(logt, logi));
    double last = rep.integrals(k, static_cast<int>(horizons.size()) - 1);
    rep.offsets_measured.push_back(t_max - last);
    rep.offsets_predicted.push_back(std::log(2.0 * (k + 1)) + kEulerGamma +
                                    expint_e1(2.0 * (k + 1)));
  }

  // transport the explicit sections with the integrator and compare
  double probe = std::min(10.0, t_max);
  int steps = 4096;
  Matrix start = Matrix::Zero(2 * K, K);
  Matrix expect = Matrix::Zero(2 * K, K);
  for (int k = 1; k <= K; ++k) {
    start(2 * (k - 1) + 1, k - 1) = std::exp(-static_cast<double>(k));
    expect(2 * (k - 1) + 1, k - 1) = std::exp(-k * std::exp(-probe));
  }
  Matrix got = evolve_frame(path, start, 0.0, probe, steps, 0);
  rep.exactness_residual = (got - expect).norm() / expect.norm();
  return rep;
}

MuModelReport mu_model(double mu) {
  if (mu <= 0) throw std::invalid_argument("mu_model: positive exponent required");
  MuModelReport rep;
  rep.mu = mu;
  rep.plus_solution_l2 = mu > 0.5;
  rep.c_ext_dim = 1;
  rep.c_max_dim = rep.plus_solution_l2 ? 1 : 0;

  rep.horizons = {10.0, 100.0, 1000.0};
  for (double t : rep.horizons)
    rep.masses.push_back(integrate([mu](double u) { return std::pow(u, -2 * mu); },
                                   1.0, t, 1e-12));

  // finite difference defect of t^{-mu} against the t^{-1} potential
  int samples = 4001;
  GridSection s = uniform_grid_section(2, 1.0, 5.0, samples);
  for (int i = 0; i < samples; ++i) s.values(0, i) = std::pow(s.grid[i], -mu);
  Matrix ds = grid_derivative(s);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    double t = s.grid[i];
    Complex defect = ds(0, i) + (mu / t) * s.values(0, i);
    worst = std::max(worst, std::abs(defect));
  }
  rep.ode_residual = worst;
  return rep;
}

}  // namespace halfline
