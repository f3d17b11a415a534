#include <cmath>

#include "doctest.h"
#include "halfline/rng.hpp"
#include "halfline/subspace.hpp"
#include "oracles.hpp"

using namespace halfline;

namespace {

Matrix unit_cols(int n, std::initializer_list<int> idx) {
  Matrix m = Matrix::Zero(n, static_cast<int>(idx.size()));
  int j = 0;
  for (int i : idx) m(i, j++) = 1.0;
  return m;
}

// gamma in the 4-dim normal form: e1 -> e3, e2 -> e4, e3 -> -e1, e4 -> -e2.
Matrix gamma4() {
  Matrix g = Matrix::Zero(4, 4);
  g.topRightCorner(2, 2) = -Matrix::Identity(2, 2);
  g.bottomLeftCorner(2, 2) = Matrix::Identity(2, 2);
  return g;
}

}  // namespace

TEST_SUITE("subspace") {
  TEST_CASE("span orthonormalizes and drops dependent columns") {
    Matrix v(3, 3);
    v.col(0) = unit_cols(3, {0});
    v.col(1) = 2.0 * unit_cols(3, {0});
    v.col(2) = unit_cols(3, {1});
    Subspace s = span(v);
    CHECK(s.dim() == 2);
    CHECK(op_norm(s.frame.adjoint() * s.frame - Matrix::Identity(2, 2)) < 1e-12);
    CHECK(op_norm(s.projector() - unit_cols(3, {0, 1}) * unit_cols(3, {0, 1}).adjoint()) <
          1e-12);
  }

  TEST_CASE("complement, intersection and sum on canonical frames") {
    Subspace f = span(unit_cols(4, {0, 1}));
    Subspace g = span(unit_cols(4, {1, 2}));
    CHECK(intersect(f, g).dim() == 1);
    CHECK(op_norm(intersect(f, g).projector() -
                  unit_cols(4, {1}) * unit_cols(4, {1}).adjoint()) < 1e-12);
    CHECK(sum(f, g).dim() == 3);
    CHECK(orthogonal_complement(f).dim() == 2);
    CHECK(same_space(orthogonal_complement(orthogonal_complement(f)), f));
    CHECK(same_space(sum(f, orthogonal_complement(f)), full_subspace(4)));
  }

  TEST_CASE("pair report on the crossing pair in C^4") {
    Subspace f = span(unit_cols(4, {0, 1}));
    Subspace g = span(unit_cols(4, {1, 2}));
    PairReport r = pair_report(f, g);
    CHECK(r.nullity == 1);
    CHECK(r.deficiency == 1);
    CHECK(r.index == 0);
  }

  TEST_CASE("pair report of a space with itself") {
    for (int n : {2, 5}) {
      for (int k = 0; k <= n; ++k) {
        Rng rng(7 * n + k);
        Subspace f = k == 0 ? zero_subspace(n) : span(rng.haar_unitary(n).leftCols(k));
        PairReport r = pair_report(f, f);
        CHECK(r.nullity == k);
        CHECK(r.deficiency == n - k);
        CHECK(r.index == 2 * k - n);
      }
    }
  }

  TEST_CASE("pair report is symmetric and matches the elimination oracle") {
    for (int trial = 0; trial < 40; ++trial) {
      Rng rng(100 + trial);
      int n = 2 + static_cast<int>(rng.next_u64() % 7);
      int k1 = rng.uniform_int(0, n);
      int k2 = rng.uniform_int(0, n);
      int shared = rng.uniform_int(0, std::min(k1, k2));
      if (k1 + k2 - shared > n) shared = k1 + k2 - n;
      Matrix u = rng.haar_unitary(n);
      Subspace f = k1 == 0 ? zero_subspace(n) : Subspace{n, u.leftCols(k1)};
      Matrix gf(n, k2);
      gf.leftCols(shared) = u.leftCols(shared);
      gf.rightCols(k2 - shared) = u.middleCols(k1, k2 - shared);
      Subspace g = k2 == 0 ? zero_subspace(n) : Subspace{n, gf};

      PairReport r = pair_report(f, g);
      PairReport rs = pair_report(g, f);
      CHECK(r.nullity == rs.nullity);
      CHECK(r.deficiency == rs.deficiency);
      CHECK(r.nullity == shared);
      CHECK(r.index == k1 + k2 - n);

      Matrix concat(n, k1 + k2);
      if (k1 > 0) concat.leftCols(k1) = f.frame;
      if (k2 > 0) concat.rightCols(k2) = g.frame;
      CHECK(n - oracle::rank_elimination(concat) == r.deficiency);
    }
  }

  TEST_CASE("orthocomplement duality exchanges nullity and deficiency") {
    for (int trial = 0; trial < 25; ++trial) {
      Rng rng(300 + trial);
      int n = 3 + static_cast<int>(rng.next_u64() % 6);
      Subspace f = span(rng.complex_gaussian_matrix(n, rng.uniform_int(1, n - 1)));
      Subspace g = span(rng.complex_gaussian_matrix(n, rng.uniform_int(1, n - 1)));
      Subspace fp = orthogonal_complement(f);
      Subspace gp = orthogonal_complement(g);
      CHECK(same_space(orthogonal_complement(intersect(f, g)), sum(fp, gp)));
      CHECK(same_space(orthogonal_complement(sum(f, g)), intersect(fp, gp)));
      PairReport r = pair_report(f, g);
      PairReport rp = pair_report(fp, gp);
      CHECK(rp.nullity == r.deficiency);
      CHECK(rp.deficiency == r.nullity);
    }
  }

  TEST_CASE("restrict_to rejects vectors outside the ambient") {
    Subspace h = span(unit_cols(4, {0, 1}));
    Subspace inside = span(unit_cols(4, {0}));
    Subspace outside = span(unit_cols(4, {2}));
    CHECK(restrict_to(inside, h).dim() == 1);
    CHECK_THROWS_AS(restrict_to(outside, h), std::invalid_argument);
  }

  TEST_CASE("omega annihilator of a line in the 4-dim normal form") {
    Subspace b = span(unit_cols(4, {0}));
    Subspace ann = omega_annihilator(b, gamma4());
    CHECK(ann.dim() == 3);
    CHECK(same_space(ann, span(unit_cols(4, {0, 1, 3}))));
    CHECK(same_space(omega_annihilator(ann, gamma4()), b));
    CHECK(omega_annihilator(full_subspace(4), gamma4()).dim() == 0);
  }

  TEST_CASE("omega pairing vanishes between B and its annihilator") {
    for (int trial = 0; trial < 20; ++trial) {
      Rng rng(500 + trial);
      Matrix g = gamma4();
      Subspace b = span(rng.complex_gaussian_matrix(4, rng.uniform_int(1, 3)));
      Subspace ann = omega_annihilator(b, g);
      CHECK(b.dim() + ann.dim() == 4);
      CHECK(op_norm(b.frame.adjoint() * g * ann.frame) < 1e-12);
    }
  }

  TEST_CASE("projection reduction on a hand checked example") {
    // P orthogonal onto e1, B spanned by e1 + e2: (I-P)B = span e2
    Matrix p = unit_cols(4, {0}) * unit_cols(4, {0}).adjoint();
    Matrix v(4, 1);
    v << 1, 1, 0, 0;
    ProjectionReduction red = reduce_by_projection(span(v), p);
    CHECK(same_space(red.reduced, span(unit_cols(4, {1}))));
    CHECK(red.space_identity);
    CHECK(red.codim_identity);
    CHECK(red.index_identity);
  }

  TEST_CASE("projection reduction sends subspaces of the image to zero") {
    Matrix p = unit_cols(4, {0, 1}) * unit_cols(4, {0, 1}).adjoint();
    ProjectionReduction red = reduce_by_projection(span(unit_cols(4, {0})), p);
    CHECK(red.reduced.dim() == 0);
    CHECK(red.space_identity);
  }

  TEST_CASE("projection reduction identities for oblique projections") {
    for (int trial = 0; trial < 30; ++trial) {
      Rng rng(700 + trial);
      int n = 2 + static_cast<int>(rng.next_u64() % 6);
      Subspace b = span(rng.complex_gaussian_matrix(n, rng.uniform_int(1, n - 1)));
      Matrix p0 = span(rng.complex_gaussian_matrix(n, rng.uniform_int(1, n - 1)))
                      .projector();
      Matrix sim = Matrix::Identity(n, n) + 0.3 * rng.complex_gaussian_matrix(n, n);
      Matrix p = sim * p0 * sim.inverse();
      ProjectionReduction red = reduce_by_projection(b, p);
      CHECK(red.space_identity);
      CHECK(red.codim_in_kernel == red.codim_of_sum);
      CHECK(red.map_index == red.pair_with_image.index);
    }
    CHECK_THROWS_AS(
        reduce_by_projection(span(unit_cols(2, {0})), Matrix::Identity(2, 2) * 2.0),
        std::invalid_argument);
  }

  TEST_CASE("stability shift matches the paper example and is exact on draws") {
    // P = Q_>, Q = Q_>= on diag(1,0,-1,0): the shift is minus the kernel size
    Matrix p = unit_cols(4, {0}) * unit_cols(4, {0}).adjoint();
    Matrix q = unit_cols(4, {0, 1, 3}) * unit_cols(4, {0, 1, 3}).adjoint();
    Rng rng(1);
    StabilityShift sh = stability_shift(span(rng.complex_gaussian_matrix(4, 2)), p, q);
    CHECK(sh.shift == -2);
    CHECK(sh.identity);

    for (int trial = 0; trial < 40; ++trial) {
      Rng r2(900 + trial);
      int n = 2 + static_cast<int>(r2.next_u64() % 7);
      Subspace b = span(r2.complex_gaussian_matrix(n, r2.uniform_int(0, n)));
      Matrix pp = span(r2.complex_gaussian_matrix(n, r2.uniform_int(0, n))).projector();
      Matrix qq = span(r2.complex_gaussian_matrix(n, r2.uniform_int(0, n))).projector();
      StabilityShift t = stability_shift(b, pp, qq);
      CHECK(t.ind_with_p == t.ind_with_q + t.shift);
      CHECK(t.identity);
    }
  }

  TEST_CASE("edge projections: zero and identity") {
    Subspace b = span(unit_cols(3, {0}));
    StabilityShift t0 =
        stability_shift(b, Matrix::Zero(3, 3), Matrix::Identity(3, 3));
    CHECK(t0.identity);
    CHECK(t0.ind_with_p == 1 - 3);
    CHECK(t0.ind_with_q == 1);
    CHECK(t0.shift == -3);
  }
}
