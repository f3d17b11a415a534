#ifndef HALFLINE_RNG_HPP
#define HALFLINE_RNG_HPP

#include <cmath>
#include <cstdint>

#include "halfline/types.hpp"

namespace halfline {

// splitmix64 step; also the documented seed splitting rule:
// draw i of a batch with master seed s is seeded with splitmix64(s + i).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic generator. Gaussians come from Box-Muller on 53-bit
// uniforms, so streams are identical across platforms with IEEE doubles.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  // uniform in (0,1)
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  int uniform_int(int lo, int hi) {  // inclusive ends
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  double gaussian() {
    double u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  Complex complex_gaussian() {
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-std::log(u1));
    return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
  }

  Matrix complex_gaussian_matrix(int rows, int cols) {
    Matrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < rows; ++i) m(i, j) = complex_gaussian();
    return m;
  }

  Matrix hermitian(int n) {
    Matrix g = complex_gaussian_matrix(n, n);
    return (g + g.adjoint()) / 2.0;
  }

  // Haar unitary: QR of a Ginibre matrix with the R diagonal phases fixed.
  Matrix haar_unitary(int n) {
    Matrix g = complex_gaussian_matrix(n, n);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
      Complex d = r(j, j);
      double a = std::abs(d);
      q.col(j) *= (a > 0) ? d / a : Complex(1, 0);
    }
    return q;
  }

 private:
  std::uint64_t state_;
};

}  // namespace halfline

#endif
