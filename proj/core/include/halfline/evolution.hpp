#ifndef HALFLINE_EVOLUTION_HPP
#define HALFLINE_EVOLUTION_HPP

#include <functional>
#include <string>
#include <vector>

#include "halfline/spectral.hpp"
#include "halfline/types.hpp"

namespace halfline {

// Section of the trivial bundle sampled on an ascending grid; values are
// read as piecewise linear between samples.
struct GridSection {
  std::vector<double> grid;
  Matrix values;  // dim x grid.size()

  int samples() const { return static_cast<int>(grid.size()); }
  int dim() const { return static_cast<int>(values.rows()); }
};

GridSection uniform_grid_section(int dim, double t0, double t1, int samples);

// Time dependent coefficients of D = gamma (d/dt + A(t)) + V(t). A(t) is
// Hermitian and anticommutes with gamma for every t; both coefficients
// freeze at the horizon: A(t) = A(r) and V(t) = 0 for t > r. The stored
// value V(r) is read as the left limit, so compactly supported potentials
// keep full integrator order on [0, r].
struct CoefficientPath {
  DiracData d;  // boundary data, a0 = A(0)
  double r = 1.0;
  std::function<Matrix(double)> a_of_t;
  std::function<Matrix(double)> v_of_t;  // empty means V = 0
  double lipschitz_bound = 0.0;
  std::string name;

  Matrix a(double t) const { return a_of_t(t < r ? t : r); }
  Matrix v(double t) const {
    if (!v_of_t || t > r) return Matrix::Zero(d.dim, d.dim);
    return v_of_t(t);
  }
  // right hand side of sigma' = (-A(t) + gamma V(t)) sigma, equivalent to
  // D sigma = 0 since gamma^{-1} = -gamma
  Matrix generator(double t) const { return -a(t) + d.gamma * v(t); }
};

CoefficientPath constant_path(const DiracData& d, double r = 1.0);

struct PathValidation {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};
PathValidation validate_path(const CoefficientPath& path, int samples = 13);

// E x (t) = exp(-t(|A| + Q_0)) x; norm nonincreasing in t for every
// Sobolev weight, and (E x)' = -(|A| + Q_0) E x.
Vector extension_section(const SpectralDecomposition& dec, const Vector& x, double t);
GridSection extension_sections(const SpectralDecomposition& dec, const Vector& x,
                               const std::vector<double>& grid);

// sigma = S tau with S the two-sided solution operator composed with
// gamma^*: decaying modes integrate from 0, growing modes from the far end,
// kernel modes are dropped. For piecewise linear tau the cell integrals of
// e^{a(s-t)} against tau are evaluated in closed form, so the only error is
// the linear interpolation of tau. Along the way
//   gamma (sigma' + A sigma) = (1 - Q_0) tau,
// and the positive part of sigma(0) vanishes.
struct InhomogeneousSolution {
  GridSection sigma;
  bool kernel_component_ignored = false;
  double kernel_component_norm = 0.0;
};
InhomogeneousSolution solve_inhomogeneous(const DiracData& d, const GridSection& tau);

// Splits sigma = E x + S tau + sigma_0 with x the positive part of
// sigma(0), sigma_0 the kernel part of sigma and tau the nonkernel part of
// gamma (sigma' + A sigma) (grid derivative); resynthesizes and reports the
// deviation. diagnostic is empty on success.
struct Representation {
  Vector x;
  GridSection tau;
  GridSection sigma0;
  GridSection resynthesis;
  double residual = 0.0;
  std::string diagnostic;
};
Representation representation_decompose(const DiracData& d, const GridSection& sigma,
                                        double tolerance = 1e-6);

// Fixed step RK4 for Phi' = (-A(t) + gamma V(t)) Phi, Phi(0) = 1. The error
// estimate is a safety-doubled Richardson difference against the half
// resolution run plus a roundoff floor; step halving must stay inside it.
struct IntegratorStats {
  int steps = 0;
  double step = 0.0;
  double error_estimate = 0.0;
};
struct FundamentalSolution {
  double r = 0.0;
  Matrix phi_r;
  IntegratorStats stats;
  // checkpoints for evaluation at interior times
  std::vector<double> checkpoint_times;
  std::vector<Matrix> checkpoints;
  const CoefficientPath* path = nullptr;

  Matrix at(double t) const;
};
FundamentalSolution fundamental_solution(const CoefficientPath& path, int steps = 2048);

// One RK4 sweep of an arbitrary frame from t0 to t1 (either direction),
// optionally QR renormalizing every qr_every steps. The span of the result
// is the flow image of the span of the input.
Matrix evolve_frame(const CoefficientPath& path, const Matrix& frame, double t0,
                    double t1, int steps, int qr_every = 0);

// Grid derivative, second order three point stencils (nonuniform safe).
Matrix grid_derivative(const GridSection& s);

// Exact piecewise integrals of a scalar piecewise linear section:
//   a |sigma(t_i) - sigma(t_j)|^2 <= 2 ||sigma'||^2_{[ti,tj]} + 2 a^2 ||sigma||^2_{[ti,tj]}
// and, when sigma vanishes at the last grid point,
//   a |sigma(t_i)|^2 <= ||sigma'||^2_{[ti,end]} + a^2 ||sigma||^2_{[ti,end]}.
struct TraceCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = true;
};
TraceCheck interval_trace_bound(double a, const GridSection& scalar, int i, int j);
TraceCheck halfline_trace_bound(double a, const GridSection& scalar, int i);

struct TraceInequalityReport {
  long checked = 0;
  long violations = 0;
  double worst_ratio = 0.0;
};
TraceInequalityReport trace_inequality_report(double a,
                                              const std::vector<GridSection>& sections);

}  // namespace halfline

#endif
