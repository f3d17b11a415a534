#ifndef HALFLINE_SUBSPACE_HPP
#define HALFLINE_SUBSPACE_HPP

#include <vector>

#include "halfline/types.hpp"

namespace halfline {

// Subspace of C^n held as an orthonormal column frame. A zero subspace has
// a frame with zero columns. Rank decisions for this instance use rank_tol
// relative to the largest singular value of whatever is being factored.
struct Subspace {
  int ambient_dim = 0;
  Matrix frame;  // ambient_dim x k, orthonormal columns
  double rank_tol = kRankTol;

  int dim() const { return static_cast<int>(frame.cols()); }
  Matrix projector() const { return frame * frame.adjoint(); }
};

// null(F,G) = dim(F cap G), def(F,G) = codim(F + G), index = null - def.
// For subspaces of C^n the index always equals dim F + dim G - n; the two
// summands are computed independently, so the report doubles as a
// consistency check on the rank decisions.
struct PairReport {
  long nullity = 0;
  long deficiency = 0;
  long index = 0;
};

Subspace zero_subspace(int ambient_dim, double rank_tol = kRankTol);
Subspace full_subspace(int ambient_dim, double rank_tol = kRankTol);

// Orthonormalizes the columns of vectors; rank cut at rank_tol * sigma_max.
// Zero columns are allowed; an empty input yields the zero subspace.
Subspace span(const Matrix& vectors, double rank_tol = kRankTol);

Subspace orthogonal_complement(const Subspace& s);
Subspace intersect(const Subspace& f, const Subspace& g);
Subspace sum(const Subspace& f, const Subspace& g);

// span of m * frame; m need not be square (maps C^n to C^rows).
Subspace image_under(const Matrix& m, const Subspace& s);

// Coordinates of s inside the subspace h (requires s subset of h); the
// result lives in C^{dim h}.
Subspace restrict_to(const Subspace& s, const Subspace& h);

PairReport pair_report(const Subspace& f, const Subspace& g);

// ||P_F - P_G|| <= 10 * rank_tol in operator norm.
bool same_space(const Subspace& f, const Subspace& g);
// max distance of g's frame vectors from f, i.e. ||(I - P_F) G||.
double containment_defect(const Subspace& f, const Subspace& g);
bool contains(const Subspace& f, const Subspace& g);

// Annihilator with respect to the boundary form omega(x,y) = <x, gamma y>:
// B^a = gamma(B^perp). Involutive, and dim B + dim B^a = ambient dim.
Subspace omega_annihilator(const Subspace& b, const Matrix& gamma);

// Reduction of B by an idempotent P (orthogonal or oblique):
//   (I-P)(B) = ker P cap (B + im P),
//   codim of (I-P)(B) in ker P = codim of B + im P,
//   ind((I-P): B -> ker P) = ind(B, im P).
struct ProjectionReduction {
  Subspace reduced;  // (I-P)(B)
  Subspace kernel;   // ker P
  Subspace image;    // im P
  long codim_in_kernel = 0;
  long codim_of_sum = 0;
  long map_nullity = 0;  // dim(B cap im P)
  long map_index = 0;
  PairReport pair_with_image;
  bool space_identity = false;  // (I-P)(B) == ker P cap (B + im P)
  bool codim_identity = false;
  bool index_identity = false;
};
ProjectionReduction reduce_by_projection(const Subspace& b, const Matrix& p);

// ind(B, im P) = ind(B, im Q) + ind(ker Q, im P) for idempotents P, Q.
struct StabilityShift {
  long ind_with_p = 0;
  long ind_with_q = 0;
  long shift = 0;  // ind(ker Q, im P)
  bool identity = false;
};
StabilityShift stability_shift(const Subspace& b, const Matrix& p, const Matrix& q);

}  // namespace halfline

#endif
