#include "doctest.h"

#include <cmath>
#include <complex>
#include <string>

#include "halfline/boundary.hpp"
#include "halfline/rng.hpp"
#include "halfline/spectral.hpp"
#include "halfline/subspace.hpp"

using namespace halfline;

namespace {

Matrix gamma4() {
  Matrix g = Matrix::Zero(4, 4);
  g.topRightCorner(2, 2) = -Matrix::Identity(2, 2);
  g.bottomLeftCorner(2, 2) = Matrix::Identity(2, 2);
  return g;
}

DiracData system4(double a, double b, double c, double d) {
  Eigen::Vector4d v(a, b, c, d);
  auto val = validate_dirac_data(v.cast<Complex>().asDiagonal(), gamma4());
  REQUIRE(val.ok());
  return *val.data;
}

Subspace unit_span(int n, std::initializer_list<int> idx) {
  Matrix frame(n, static_cast<long>(idx.size()));
  int col = 0;
  for (int i : idx) frame.col(col++) = Vector::Unit(n, i);
  return Subspace{n, frame, kRankTol};
}

template <class F>
bool throws_containing(F&& f, const std::string& needle) {
  try {
    f();
  } catch (const std::invalid_argument& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

}  // namespace

TEST_SUITE("boundary") {

TEST_CASE("aps conditions pick the spectral buckets below the level") {
  DiracData d = system4(1, 0, -1, 0);
  BoundaryCondition closed = aps_condition(d, 0.0, true);
  CHECK(closed.space.dim() == 3);
  CHECK(closed.label == "APS(0]");
  CHECK(closed.kind == BcKind::aps);

  BoundaryCondition open = aps_condition(d, 0.0, false);
  CHECK(open.space.dim() == 1);
  CHECK(open.label == "APS(0)");

  DiracData wide = system4(1, 2, -1, -2);
  CHECK(aps_condition(wide, 1.5).space.dim() == 3);
  CHECK(aps_condition(wide, -1.5).space.dim() == 1);
}

TEST_CASE("trivial elliptic data reproduces the aps condition") {
  DiracData d = system4(1, 0, -1, 0);
  SpectralDecomposition dec = eigendecompose(d);
  Subspace h_le = spectral_projection(dec, Interval::at_most(0)).first;
  Subspace h_neg = spectral_projection(dec, Interval::less(0)).first;

  EllipticData data;
  data.lambda = 0.0;
  data.f = zero_subspace(4);
  data.e = zero_subspace(4);
  data.u = h_le;
  data.v = h_neg;
  data.g = Matrix::Zero(h_neg.dim(), h_le.dim());

  BoundaryCondition b = from_elliptic_data(d, data);
  CHECK(same_space(b.space, aps_condition(d, 0.0, true).space));
  CHECK(b.kind == BcKind::elliptic_data);

  // swapping the roles of E and U empties the graph part entirely
  std::swap(data.e, data.u);
  data.g = Matrix::Zero(h_neg.dim(), 0);
  CHECK(from_elliptic_data(d, data).space.dim() == 0);
}

TEST_CASE("elliptic data builds gamma F plus a graph over U") {
  DiracData d = system4(1, 0, -1, 0);

  EllipticData data;
  data.lambda = 0.0;
  data.f = unit_span(4, {2});
  data.v = zero_subspace(4);
  data.e = unit_span(4, {2});
  data.u = unit_span(4, {1, 3});
  data.g = Matrix::Zero(0, 2);

  BoundaryCondition b = from_elliptic_data(d, data);
  CHECK(same_space(b.space, unit_span(4, {0, 1, 3})));

  // the adjoint display matches the omega annihilator
  BoundaryCondition shown = adjoint_from_elliptic_data(d, data);
  BoundaryCondition direct = adjoint_condition(d, b);
  CHECK(same_space(shown.space, direct.space));
}

TEST_CASE("elliptic data round-trips through recovery at two levels") {
  DiracData d = system4(1, 2, -1, -2);

  EllipticData data;
  data.lambda = 0.0;
  data.f = unit_span(4, {2});
  data.v = unit_span(4, {3});
  data.e = unit_span(4, {2});
  data.u = unit_span(4, {3});
  data.g = Matrix::Constant(1, 1, Complex(0.7, 0.0));

  BoundaryCondition b = from_elliptic_data(d, data);
  CHECK(b.space.dim() == 2);

  EllipticData back = elliptic_data_of(d, b, 0.0);
  CHECK(back.f.dim() == 1);
  CHECK(back.u.dim() == 1);
  CHECK(std::abs(back.g(0, 0)) == doctest::Approx(0.7));
  CHECK(same_space(from_elliptic_data(d, back).space, b.space));

  // the same condition displayed over a higher level: F empties out and the
  // graph widens, but the condition itself is unchanged
  EllipticData high = elliptic_data_of(d, b, 1.5);
  CHECK(high.f.dim() == 0);
  CHECK(high.u.dim() == 2);
  CHECK(high.e.dim() == 1);
  CHECK(same_space(from_elliptic_data(d, high).space, b.space));
}

TEST_CASE("random conditions survive the elliptic round trip") {
  DiracData d = random_system(6, 2, 31);
  Rng rng(77);
  for (int i = 0; i < 12; ++i) {
    Subspace b = span(rng.complex_gaussian_matrix(6, rng.uniform_int(1, 5)));
    BoundaryCondition raw = raw_condition(b);
    for (double lambda : {0.0, 1.2}) {
      EllipticData data = elliptic_data_of(d, raw, lambda);
      CHECK(same_space(from_elliptic_data(d, data).space, b));
      BoundaryCondition shown = adjoint_from_elliptic_data(d, data);
      CHECK(same_space(shown.space, adjoint_condition(d, raw).space));
    }
  }
}

TEST_CASE("elliptic data rejects splits outside the spectral buckets") {
  DiracData d = system4(1, 2, -1, -2);
  EllipticData data;
  data.lambda = 0.0;
  data.f = zero_subspace(4);
  data.v = unit_span(4, {2, 3});
  data.e = zero_subspace(4);
  data.u = unit_span(4, {0});  // not inside H_{<= 0}
  data.g = Matrix::Zero(2, 1);
  CHECK_THROWS_AS(from_elliptic_data(d, data), std::invalid_argument);

  data.u = unit_span(4, {2});  // undersized split
  data.g = Matrix::Zero(2, 1);
  CHECK_THROWS_AS(from_elliptic_data(d, data), std::invalid_argument);

  data.u = unit_span(4, {2, 3});
  data.e = unit_span(4, {2});  // not orthogonal to u
  data.g = Matrix::Zero(2, 2);
  CHECK_THROWS_AS(from_elliptic_data(d, data), std::invalid_argument);

  data.e = zero_subspace(4);
  data.g = Matrix::Zero(1, 1);  // wrong shape
  CHECK_THROWS_AS(from_elliptic_data(d, data), std::invalid_argument);
}

TEST_CASE("adjoint condition is the omega annihilator and involutive") {
  DiracData d = random_system(8, 0, 5);
  Rng rng(6);
  Subspace b = span(rng.complex_gaussian_matrix(8, 3));
  BoundaryCondition cond = raw_condition(b, "draw");
  BoundaryCondition adj = adjoint_condition(d, cond);
  CHECK(adj.label == "draw^a");
  CHECK(adj.space.dim() == 5);
  CHECK(same_space(adjoint_condition(d, adj).space, b));
}

TEST_CASE("lagrangian data with trivial kernel recovers negative spectral space") {
  DiracData d = system4(1, 2, -1, -2);
  Subspace h_neg = unit_span(4, {2, 3});

  BoundaryCondition b = self_adjoint_from_lagrangian(
      d, zero_subspace(4), zero_subspace(4), Matrix::Zero(2, 2));
  CHECK(same_space(b.space, h_neg));
  CHECK(b.kind == BcKind::lagrangian);
  CHECK(same_space(adjoint_condition(d, b).space, b.space));

  Matrix g(2, 2);
  g << Complex(0.3, 0), Complex(0.1, 0.2), Complex(0.1, -0.2), Complex(-0.5, 0);
  BoundaryCondition twisted = self_adjoint_from_lagrangian(
      d, zero_subspace(4), zero_subspace(4), g);
  CHECK(same_space(adjoint_condition(d, twisted).space, twisted.space));
  CHECK_FALSE(same_space(twisted.space, h_neg));
}

TEST_CASE("lagrangian data across a kernel yields self-adjoint conditions") {
  DiracData d = system4(1, 0, -1, 0);
  Subspace lag = unit_span(4, {1});
  Subspace f = unit_span(4, {2});

  BoundaryCondition b = self_adjoint_from_lagrangian(d, lag, f,
                                                     Matrix::Constant(1, 1, 0.4));
  CHECK(b.space.dim() == 2);
  CHECK(same_space(adjoint_condition(d, b).space, b.space));

  // gamma e1 = e3 spans the complementary Lagrangian
  BoundaryCondition other = self_adjoint_from_lagrangian(
      d, unit_span(4, {3}), f, Matrix::Constant(1, 1, 0.0));
  CHECK(same_space(adjoint_condition(d, other).space, other.space));
  CHECK_FALSE(same_space(b.space, other.space));
}

TEST_CASE("lagrangian construction names its obstructions") {
  DiracData d = system4(1, 0, -1, 0);
  Subspace lag = unit_span(4, {1});
  Matrix g1 = Matrix::Constant(1, 1, 0.0);

  CHECK(throws_containing(
      [&] { self_adjoint_from_lagrangian(d, unit_span(4, {0}), zero_subspace(4), g1); },
      "Hermitian symplectic obstruction"));
  CHECK(throws_containing(
      [&] { self_adjoint_from_lagrangian(d, zero_subspace(4), zero_subspace(4),
                                         Matrix::Zero(1, 1)); },
      "not Lagrangian"));

  // isotropy fails for a complex-phase line in the kernel
  Matrix tilt(4, 1);
  tilt << Complex(0, 0), Complex(1, 0), Complex(0, 0), Complex(0, 0.5);
  CHECK(throws_containing(
      [&] { self_adjoint_from_lagrangian(d, span(tilt), zero_subspace(4), g1); },
      "not Lagrangian"));

  CHECK(throws_containing(
      [&] { self_adjoint_from_lagrangian(d, lag, unit_span(4, {0}), g1); },
      "F does not lie"));

  Matrix skew(1, 1);
  skew << Complex(0, 1);
  CHECK(throws_containing(
      [&] { self_adjoint_from_lagrangian(d, lag, unit_span(4, {2}), skew); },
      "g is not Hermitian"));

  CHECK_THROWS_AS(
      self_adjoint_from_lagrangian(d, lag, unit_span(4, {2}), Matrix::Zero(3, 3)),
      std::invalid_argument);
}

TEST_CASE("lagrangian data exists exactly when the chirality is balanced") {
  // balanced: gamma in block form on a trivial a0, any coordinate Lagrangian
  DiracData flat;
  flat.dim = 4;
  flat.a0 = Matrix::Zero(4, 4);
  flat.gamma = gamma4();
  BoundaryCondition b = self_adjoint_from_lagrangian(
      flat, unit_span(4, {0, 1}), zero_subspace(4), Matrix::Zero(2, 2));
  CHECK(same_space(adjoint_condition(flat, b).space, b.space));

  // unbalanced: i diag(1,1,1,-1) admits no Lagrangian at all
  DiracData skewed;
  skewed.dim = 4;
  skewed.a0 = Matrix::Zero(4, 4);
  Eigen::Vector4d signs(1, 1, 1, -1);
  skewed.gamma = Complex(0, 1) * Matrix(signs.cast<Complex>().asDiagonal());
  CHECK(chirality_split(skewed).chiral_index == -2);
  Rng rng(40);
  for (int i = 0; i < 6; ++i) {
    Subspace candidate = span(rng.complex_gaussian_matrix(4, 2));
    CHECK(throws_containing(
        [&] {
          self_adjoint_from_lagrangian(skewed, candidate, zero_subspace(4),
                                       Matrix::Zero(2, 2));
        },
        "Hermitian symplectic obstruction"));
  }
}

TEST_CASE("transmission condition is the diagonal and self-adjoint") {
  BoundaryCondition trans = transmission_condition(2);
  CHECK(trans.space.ambient_dim == 4);
  CHECK(trans.space.dim() == 2);
  CHECK(trans.kind == BcKind::transmission);

  Matrix diag_frame(4, 2);
  diag_frame.setZero();
  diag_frame(0, 0) = diag_frame(2, 0) = 1.0 / std::sqrt(2.0);
  diag_frame(1, 1) = diag_frame(3, 1) = 1.0 / std::sqrt(2.0);
  CHECK(same_space(trans.space, Subspace{4, diag_frame, kRankTol}));

  // doubled system with the orientation of the second copy reversed
  DiracData half = system4(1, 0, -1, 0);
  DiracData doubled;
  doubled.dim = 8;
  doubled.a0 = Matrix::Zero(8, 8);
  doubled.a0.topLeftCorner(4, 4) = half.a0;
  doubled.a0.bottomRightCorner(4, 4) = -half.a0;
  doubled.gamma = Matrix::Zero(8, 8);
  doubled.gamma.topLeftCorner(4, 4) = half.gamma;
  doubled.gamma.bottomRightCorner(4, 4) = -half.gamma;
  REQUIRE(validate_dirac_data(doubled.a0, doubled.gamma).ok());

  BoundaryCondition t4 = transmission_condition(4);
  CHECK(same_space(adjoint_condition(doubled, t4).space, t4.space));

  Subspace first_half{8, Matrix::Identity(8, 8).leftCols(4), kRankTol};
  CHECK(intersect(t4.space, first_half).dim() == 0);
}

TEST_CASE("projection conditions and their gamma conjugates") {
  DiracData d = system4(1, 0, -1, 0);
  SpectralDecomposition dec = eigendecompose(d);
  Matrix q_gt = spectral_projection(dec, Interval::greater(0)).second;
  Matrix q_ge = spectral_projection(dec, Interval::at_least(0)).second;

  ProjectionCondition pc = from_projection(d, q_gt);
  CHECK(same_space(pc.b.space, aps_condition(d, 0.0, true).space));
  CHECK((pc.p_gamma - q_ge).norm() < 1e-12);
  CHECK(pc.b_adjoint.space.dim() == 1);
  CHECK(pc.annihilator_agreement < 1e-10);

  ProjectionCondition all = from_projection(d, Matrix::Identity(4, 4));
  CHECK(all.b.space.dim() == 0);
  CHECK(all.b_adjoint.space.dim() == 4);
  CHECK(all.annihilator_agreement < 1e-10);

  // oblique idempotents are accepted
  Matrix p = Matrix::Zero(4, 4);
  p(0, 0) = 1;
  p(0, 1) = 1;
  ProjectionCondition oblique = from_projection(d, p);
  CHECK(oblique.b.space.dim() == 3);
  CHECK(oblique.annihilator_agreement < 1e-10);

  CHECK_THROWS_AS(from_projection(d, 0.5 * Matrix::Identity(4, 4)),
                  std::invalid_argument);
  CHECK_THROWS_AS(from_projection(d, Matrix::Zero(2, 2)), std::invalid_argument);
}

TEST_CASE("index against a spectral halfspace splits into kernel and defect") {
  DiracData d = random_system(6, 2, 13);
  SpectralDecomposition dec = eigendecompose(d);
  Rng rng(14);
  for (double lambda : {0.0, 1.2}) {
    Subspace h_ge = spectral_projection(dec, Interval::at_least(lambda)).first;
    Subspace h_lt = spectral_projection(dec, Interval::less(lambda)).first;
    for (int i = 0; i < 10; ++i) {
      Subspace b = span(rng.complex_gaussian_matrix(6, rng.uniform_int(0, 6)));
      PairReport rep = pair_report(b, h_ge);
      long kernel = intersect(b, h_ge).dim();
      long defect = intersect(orthogonal_complement(b), h_lt).dim();
      CHECK(rep.index == kernel - defect);
    }
  }
}

}  // TEST_SUITE
