// Closed form coefficient families used to exercise the numerical machinery.
#ifndef HALFLINE_MODELS_HPP
#define HALFLINE_MODELS_HPP

#include <vector>

#include "halfline/calderon.hpp"
#include "halfline/evolution.hpp"
#include "halfline/spectral.hpp"
#include "halfline/types.hpp"

namespace halfline {

// K blocks of size four. Block k carries the pair potential with strength k;
// one covariant constant section per block crosses from the nonnegative to
// the negative side of the boundary operator exactly when k >= 2.
CoefficientPath hyperbolic_even_path(int K, double r = -1.0);

// K blocks of size two with boundary operator k e^{-t} diag(1, -1). The
// explicit sections approach unit norm, so they are bounded but not square
// integrable; their mass on [0, T] grows linearly.
CoefficientPath hyperbolic_odd_path(int K, double horizon);

// Constant boundary operator with integer modes 1..K on each chirality and a
// sine squared bump of nearest neighbour hopping as the potential.
CoefficientPath cylinder_family(int K, double coupling, double r);

struct EvenModelReport {
  int K = 0;
  double r = 0.0;
  int predicted_count = 0;  // K - 1
  int computed_count = 0;   // strict negative boundary modes meeting C_ext
  double duality_residual = 0.0;
  // distance of the transported Cauchy space from its closed form
  double analytic_residual = 0.0;
  bool ok() const { return computed_count == predicted_count; }
};

EvenModelReport hyperbolic_even_model(int K, EvolveOptions opt = {});

struct OddModelReport {
  int K = 0;
  std::vector<double> horizons;
  // integrals(k - 1, j) = mass of section k on [0, horizons[j]]
  Eigen::MatrixXd integrals;
  std::vector<double> slopes;             // log log fit per section
  std::vector<double> offsets_measured;   // horizon minus mass at the largest horizon
  std::vector<double> offsets_predicted;  // log 2k + euler gamma + E1(2k)
  double exactness_residual = 0.0;        // ODE defect of the explicit sections
};

OddModelReport hyperbolic_odd_model(
    int K, const std::vector<double>& horizons = {40, 80, 160, 320});

// Scalar pair on [1, infinity) with potential mu / t: one solution falls off
// like t^{-mu}, the other grows like t^{mu}. The decaying one is square
// integrable precisely above mu = 1/2, where both Cauchy spaces are the same
// line.
struct MuModelReport {
  double mu = 0.0;
  bool plus_solution_l2 = false;
  int c_max_dim = 0;
  int c_ext_dim = 0;
  double ode_residual = 0.0;
  // mass of the decaying solution on [1, T] for growing T
  std::vector<double> horizons;
  std::vector<double> masses;
};

MuModelReport mu_model(double mu);

}  // namespace halfline

#endif
