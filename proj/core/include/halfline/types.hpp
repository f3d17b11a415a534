#ifndef HALFLINE_TYPES_HPP
#define HALFLINE_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace halfline {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Default relative tolerances. Rank decisions compare singular values against
// rank_tol * sigma_max; validation residuals against tol * (1 + norm of input).
inline constexpr double kRankTol = 1e-7;
inline constexpr double kValidationTol = 1e-8;
inline constexpr double kClusterTol = 1e-9;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Spectral window with explicit end semantics. Endpoints may be +-infinity,
// in which case the closed flag is irrelevant.
struct Interval {
  double lo = -kInf;
  double hi = kInf;
  bool lo_closed = false;
  bool hi_closed = false;

  static Interval greater(double l) { return {l, kInf, false, false}; }
  static Interval at_least(double l) { return {l, kInf, true, false}; }
  static Interval less(double h) { return {-kInf, h, false, false}; }
  static Interval at_most(double h) { return {-kInf, h, false, true}; }
  static Interval closed(double l, double h) { return {l, h, true, true}; }
  static Interval open(double l, double h) { return {l, h, false, false}; }
  static Interval point(double x) { return {x, x, true, true}; }
  static Interval all() { return {}; }
};

// Thrown when a projection window endpoint falls inside an eigenvalue
// cluster so that membership cannot be decided.
struct spectral_cut_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a graph representation over a spectral level does not exist;
// carries the measured surjectivity defect.
struct graph_error : std::runtime_error {
  int defect;
  explicit graph_error(const std::string& what, int defect_)
      : std::runtime_error(what), defect(defect_) {}
};

inline double op_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

}  // namespace halfline

#endif
