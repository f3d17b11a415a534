// Index bookkeeping for boundary conditions against the Cauchy data spaces.
#ifndef HALFLINE_INDICES_HPP
#define HALFLINE_INDICES_HPP

#include <cstdint>
#include <map>
#include <string>

#include "halfline/boundary.hpp"
#include "halfline/calderon.hpp"
#include "halfline/evolution.hpp"
#include "halfline/spectral.hpp"
#include "halfline/subspace.hpp"
#include "halfline/types.hpp"

namespace halfline {

// Every report carries named consistency residuals. Each residual compares
// two independent rank routes to the same integer and must vanish exactly.
struct IndexReport {
  int kernel_dim = 0;
  int cokernel_dim = 0;
  int index = 0;
  std::string method;
  std::map<std::string, double> residuals;
  double max_residual() const;
};

// Kernel as B meeting C_ext, cokernel as the adjoint condition meeting C_max.
// The pair index of (B, C_ext) is recorded as a second route.
IndexReport ext_index(const DiracData& d, const BoundaryCondition& b,
                      const CalderonPair& cp);

struct AgranovichDyninReport {
  double lambda = 0.0;
  int full_index = 0;        // index of B itself
  int level_index = 0;       // index of the spectral cut condition H_{<= lambda}
  int correction = 0;        // pair index of (B, H_{> lambda})
  std::map<std::string, double> residuals;
  double max_residual() const;
};

// full = level + correction, the two sides computed through disjoint ranks.
AgranovichDyninReport agranovich_dynin(const DiracData& d, const BoundaryCondition& b,
                                       const CalderonPair& cp, double lambda);

struct DiscontinuityReport {
  double lambda = 0.0;
  int jump = 0;          // index with the eigenvalue included minus excluded
  int multiplicity = 0;  // dimension of the eigenspace at lambda
  double residual = 0.0;
};

// Crossing an eigenvalue with the cut level shifts the index by the full
// eigenspace dimension.
DiscontinuityReport level_discontinuity(const DiracData& d, const CalderonPair& cp,
                                        double lambda);

struct AdjointSumReport {
  int index_b = 0;
  int index_adjoint = 0;
  int tail_kernel_dim = 0;
  double residual = 0.0;
};

// ind B + ind B^a equals the tail kernel dimension.
AdjointSumReport adjoint_sum(const DiracData& d, const BoundaryCondition& b,
                             const CalderonPair& cp);

struct CobordismReport {
  int chiral_index = 0;
  int tail_kernel_dim = 0;
  bool fredholm_type = false;  // invertible tail operator
  double residual = 0.0;       // |chiral_index| when fredholm_type holds
};

// An invertible tail forces the chirality count of ker a0 to vanish.
CobordismReport cobordism_check(const DiracData& d, const CalderonPair& cp);

struct UnbalancedProbe {
  int plus_dim = 0;
  int minus_dim = 0;
  int attempts = 0;
  int min_kernel_dim = 0;  // smallest kernel over all drawn candidates
  bool bound_respected = false;
};

// Negative control: with an unbalanced chirality no compatible symbol can be
// invertible. Draws random Hermitian candidates, projects them onto the
// anticommutant of gamma and records the kernel dimensions.
UnbalancedProbe unbalanced_gamma_probe(int plus_dim, int minus_dim, int attempts,
                                       std::uint64_t seed);

// Two half lines glued along t = 0: block coefficients with opposite boundary
// operators and opposite gamma.
struct DoubledSystem {
  CoefficientPath half1;
  CoefficientPath half2;
  DiracData d;            // doubled data
  CoefficientPath path;   // doubled coefficient path
};

DoubledSystem double_paths(const CoefficientPath& p1, const CoefficientPath& p2);

struct BojarskiReport {
  int doubled_index = 0;  // transmission condition on the doubled system
  int pair_index = 0;     // Fredholm pair index of the two Cauchy data spaces
  double compat_residual = 0.0;  // doubled Cauchy space against the direct sum
  double residual = 0.0;
};

BojarskiReport bojarski_check(const DoubledSystem& ds, EvolveOptions opt = {});

struct SplittingReport {
  int doubled_index = 0;
  int side1_index = 0;
  int side2_index = 0;
  int correction = 0;  // pair index of the two cutting conditions
  double residual = 0.0;
};

// Cutting the doubled problem along t = 0 with conditions (b1, b2):
// doubled = side1 + side2 - correction, and the correction vanishes exactly
// when b2 is the orthogonal complement of b1.
SplittingReport splitting_check(const DoubledSystem& ds, const Subspace& b1,
                                const Subspace& b2, EvolveOptions opt = {});

struct SusyIndexReport {
  int index_total = 0;
  int index_plus = 0;
  int index_minus = 0;
  int kernel_plus = 0, cokernel_plus = 0;
  int kernel_minus = 0, cokernel_minus = 0;
  std::map<std::string, double> residuals;
  double max_residual() const;
};

// For an invariant condition the index splits over the supersymmetry
// eigenspaces; the cokernel of each half lives on the opposite side because
// gamma exchanges the two. Throws when b fails to be invariant.
SusyIndexReport susy_indices(const DiracData& d, const BoundaryCondition& b,
                             const CalderonPair& cp);

}  // namespace halfline

#endif
