#ifndef HALFLINE_BOUNDARY_HPP
#define HALFLINE_BOUNDARY_HPP

#include <string>

#include "halfline/spectral.hpp"
#include "halfline/subspace.hpp"

namespace halfline {

enum class BcKind { aps, elliptic_data, lagrangian, transmission, projection, raw };

// A boundary condition is a subspace of the boundary space together with a
// label recording how it was built. The adjoint condition is the
// annihilator with respect to omega(x,y) = <x, gamma y>.
struct BoundaryCondition {
  Subspace space;
  std::string label;
  BcKind kind = BcKind::raw;
};

BoundaryCondition raw_condition(const Subspace& space, const std::string& label = "raw");

// B = H_{<= lambda} (closed) or H_{< lambda} (open).
BoundaryCondition aps_condition(const DiracData& d, double lambda = 0.0,
                                bool closed = true);

// Data for a condition over the level lambda:
//   H_{<= lambda} = E + U,  H_{< -lambda} = F + V  (orthogonal splits,
//   E and F of finite dimension), g maps U to V, and
//   B = gamma F + {u + gamma g u : u in U},
//   B^a = gamma E + {v + gamma g^* v : v in V}.
// Frames for U and V fix the matrix representation of g.
struct EllipticData {
  double lambda = 0.0;
  Subspace f;
  Subspace e;
  Subspace u;  // orthocomplement of e in H_{<= lambda}
  Subspace v;  // orthocomplement of f in H_{< -lambda}
  Matrix g;    // dim v x dim u, coordinates in the stored frames
};

BoundaryCondition from_elliptic_data(const DiracData& d, const EllipticData& data);

// Recovers elliptic data from an arbitrary condition over the level lambda:
// F = gamma^*(B cap H_{> lambda}), U = Q_{<= lambda}(B), E = U^perp inside
// H_{<= lambda}, V = F^perp inside H_{< -lambda}; round-trips with
// from_elliptic_data.
EllipticData elliptic_data_of(const DiracData& d, const BoundaryCondition& b,
                              double lambda = 0.0);

// The adjoint display built from the same data, for cross-checking against
// omega_annihilator.
BoundaryCondition adjoint_from_elliptic_data(const DiracData& d,
                                             const EllipticData& data);

BoundaryCondition adjoint_condition(const DiracData& d, const BoundaryCondition& b);

// Self-adjoint conditions from Lagrangian data: L in ker a0 with
// L perp gamma L and L + gamma L = ker a0, F inside H_{<0}, g Hermitian on
// V + L where V = F^perp inside H_{<0}; then
//   B = gamma F + {w + gamma g w : w in V + L}
// satisfies B^a = B. Fails with "Hermitian symplectic obstruction" when L
// is not Lagrangian or g is not Hermitian. Lagrangian subspaces of ker a0
// exist iff the chiral index vanishes there.
BoundaryCondition self_adjoint_from_lagrangian(const DiracData& d,
                                               const Subspace& lagrangian,
                                               const Subspace& f, const Matrix& g);

// Diagonal of H + H as a condition for a doubled system.
BoundaryCondition transmission_condition(int dim);

// Condition induced by an idempotent p: B = ker p. The adjoint is the
// kernel of p_gamma = gamma^* (1 - p^*) gamma, which is verified against
// the omega annihilator.
struct ProjectionCondition {
  BoundaryCondition b;
  Matrix p_gamma;
  BoundaryCondition b_adjoint;  // ker p_gamma
  double annihilator_agreement;  // ||P_{ker p_gamma} - P_{B^a}||
};
ProjectionCondition from_projection(const DiracData& d, const Matrix& p);

}  // namespace halfline

#endif
