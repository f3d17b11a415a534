// Cauchy data spaces of the half line problem and their graph representations.
#ifndef HALFLINE_CALDERON_HPP
#define HALFLINE_CALDERON_HPP

#include <vector>

#include "halfline/evolution.hpp"
#include "halfline/spectral.hpp"
#include "halfline/subspace.hpp"
#include "halfline/types.hpp"

namespace halfline {

struct EvolveOptions {
  int steps = 2048;
  int qr_every = 16;
};

// C_max collects boundary values of solutions that decay past the horizon,
// C_ext those of solutions that merely stay bounded. The gap between them is
// spanned by the kernel modes of the frozen tail operator.
struct CalderonPair {
  Subspace c_max;
  Subspace c_ext;
  Matrix p_ext;  // orthogonal projector onto c_ext
  Matrix p_max;  // gamma^* (1 - p_ext) gamma, lands on c_max by duality
  // || p_max - direct projector onto c_max ||; this is the duality defect
  double duality_residual = 0.0;
  // projector distance against a run at doubled resolution
  double cross_check = 0.0;
  int tail_kernel_dim = 0;
};

// Transports the spectral tail frames of a(r) back to t = 0 with periodic QR
// renormalisation. The backward sweep is self correcting for the decaying
// directions, so no inverse of the fundamental solution is ever formed.
CalderonPair calderon_subspaces(const CoefficientPath& path, EvolveOptions opt = {});

// Closed form for t independent coefficients: the Cauchy data spaces are the
// spectral subspaces of a0 themselves.
CalderonPair constant_calderon(const DiracData& d);

// C_ext written over the level lambda: the part K_lambda below the level plus
// a graph {u + t u} over the strictly upper spectral bucket.
struct GraphData {
  double lambda = 0.0;
  Subspace k_lambda;    // c_ext intersected with H_{<= lambda}
  Subspace graph_part;  // orthogonal complement of k_lambda inside c_ext
  Matrix f_gt, f_le;    // eigenframes of H_{> lambda} and H_{<= lambda}
  RealVector evs_gt, evs_le;
  Matrix t_coords;  // graph coordinate map in the eigenframes
  Matrix t_full;    // the same map as an ambient operator
};

// Throws graph_error with the rank defect when the projection of c_ext onto
// H_{> lambda} fails to be onto.
GraphData graph_representation(const Subspace& c_ext, const SpectralDecomposition& dec,
                               double lambda, double rank_tol = kRankTol);

// Admissibility is monotone in the level; returns the first admissible value
// among 0 and the spectral gap midpoints.
double smallest_admissible_level(const Subspace& c_ext, const SpectralDecomposition& dec,
                                 double rank_tol = kRankTol);

// Orthogonal projector onto the graph part, assembled from the block formula
// Y (1 + T^* T)^{-1} Y^* with Y = F_> + F_<= T.
Matrix block_graph_projection(const GraphData& g);

// k_lambda projector plus the graph projector; must reproduce p_ext.
Matrix reconstructed_ext_projection(const GraphData& g);

struct ScanRow {
  double lambda = 0.0;
  double s = 0.0;
  double norm_mid = 0.0;  // s weighted norm of Q_{[-lambda, lambda]} T_lambda
  double norm_far = 0.0;  // s weighted norm of Q_{< -lambda} T_lambda
};

std::vector<ScanRow> decay_scan(const Subspace& c_ext, const SpectralDecomposition& dec,
                                const std::vector<double>& lambdas,
                                const std::vector<double>& s_values);

struct SlopeFit {
  double s = 0.0;
  double slope_mid = 0.0;
  double slope_far = 0.0;
  // set when every norm in the column vanishes (uncoupled family); the
  // corresponding slope is reported as 0 and satisfies any decay bound.
  bool mid_zero = false;
  bool far_zero = false;
};

// Least squares slopes of log norm against log lambda, one fit per weight.
std::vector<SlopeFit> fit_decay_slopes(const std::vector<ScanRow>& rows);

}  // namespace halfline

#endif
