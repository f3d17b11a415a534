#ifndef HALFLINE_SPECTRAL_HPP
#define HALFLINE_SPECTRAL_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "halfline/subspace.hpp"
#include "halfline/types.hpp"

namespace halfline {

// Boundary data of a Dirac system on the half line. a0 is Hermitian with
// spectrum symmetric about 0, gamma is unitary with
//   -gamma = gamma^* = gamma^{-1},   a0 gamma + gamma a0 = 0,
// and the optional grading alpha satisfies
//   alpha = alpha^* = alpha^{-1},  alpha gamma + gamma alpha = 0,
//   [a0, alpha] = 0.
struct DiracData {
  int dim = 0;
  Matrix a0;
  Matrix gamma;
  std::optional<Matrix> alpha;
  double tol = kValidationTol;
};

struct Violation {
  std::string relation;
  double residual;
};

struct DiracValidation {
  std::optional<DiracData> data;  // engaged iff violations is empty
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Residual checks for every defining relation; tol < 0 selects the default
// kValidationTol * (1 + max input Frobenius norm). Dimension mismatches and
// odd dimension throw std::invalid_argument.
DiracValidation validate_dirac_data(const Matrix& a0, const Matrix& gamma,
                                    const std::optional<Matrix>& alpha = std::nullopt,
                                    double tol = -1.0);

// Eigenvalues merged into clusters when adjacent gaps are at most
// cluster_tol; one orthonormal frame per cluster, eigenvalues ascending.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  std::vector<Matrix> frames;
  double cluster_tol = kClusterTol;
  int ambient_dim = 0;
  // raw extent of each cluster before averaging, for cut detection
  std::vector<double> cluster_min;
  std::vector<double> cluster_max;

  int clusters() const { return static_cast<int>(eigenvalues.size()); }
  int multiplicity(int j) const { return static_cast<int>(frames[j].cols()); }
};

// cluster_tol < 0 selects kClusterTol * (1 + ||a||).
SpectralDecomposition eigendecompose(const Matrix& a, double cluster_tol = -1.0);
SpectralDecomposition eigendecompose(const DiracData& d);

// Spectral projection Q_J onto the clusters inside the window. A window
// endpoint that cuts through a cluster raises spectral_cut_error; an
// endpoint sitting on a cluster (within cluster_tol) is resolved by the
// closed flag of that endpoint.
std::pair<Subspace, Matrix> spectral_projection(const SpectralDecomposition& dec,
                                                const Interval& window,
                                                double rank_tol = kRankTol);

// Weight (I + a0^2)^{s/2}; weight(s) * weight(-s) = I.
struct SobolevWeight {
  double s = 0.0;
  Matrix weight;
};
SobolevWeight sobolev_weight(const SpectralDecomposition& dec, double s);

// Pairing B_s(x, y) = <weight(s) x, weight(-s) y>, conjugate linear in x.
// B_s extends the inner product: B_s(x, y) = <x, y> whenever either side
// needs no weighting, and |B_s(x,y)| <= ||x||_s ||y||_{-s}.
Complex sobolev_pair(const SpectralDecomposition& dec, const Vector& x,
                     const Vector& y, double s);
double sobolev_norm(const SpectralDecomposition& dec, const Vector& x, double s);

// Eigenspaces of the Hermitian involution i*gamma restricted to ker a0 are
// not singled out here; the split is of the whole space. chiral_index =
// dim H^+ - dim H^-, and it vanishes whenever some invertible Hermitian
// matrix anticommutes with gamma.
struct ChiralitySplit {
  Subspace plus;
  Subspace minus;
  long chiral_index = 0;
};
ChiralitySplit chirality_split(const DiracData& d);

// Seeded draw in the normal form gamma = [[0,-I],[I,0]],
// a0 = U diag(B, -B) U^*, alpha = U diag(I, -I) U^* with [U, gamma] = 0.
// The spectrum multiset must be symmetric about 0 with even total size and
// evenly many zeros; the non-negative half lands in B. Identical seeds give
// bit-identical output.
DiracData random_system(int dim, const std::vector<double>& spectrum,
                        std::uint64_t seed);

// Convenience: symmetric spectrum with kernel_dim zeros (kernel_dim even),
// remaining eigenvalues +-u with u drawn uniformly from [0.5, 3].
DiracData random_system(int dim, int kernel_dim, std::uint64_t seed);

}  // namespace halfline

#endif
