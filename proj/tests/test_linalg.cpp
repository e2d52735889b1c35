#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <random>

#include "zonovol/linalg.hpp"
#include "zonovol/matrix.hpp"

using namespace zonovol;

namespace {

// Independent oracle: cofactor expansion along the first row.
double cofactor_det(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  if (n == 1) return m(0, 0);
  double sum = 0.0;
  double sign = 1.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::MatrixXd minor(n - 1, n - 1);
    for (Eigen::Index i = 1; i < n; ++i) {
      Eigen::Index cc = 0;
      for (Eigen::Index c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(i - 1, cc++) = m(i, c);
      }
    }
    sum += sign * m(0, j) * cofactor_det(minor);
    sign = -sign;
  }
  return sum;
}

RealMatrix example_3state() {
  return RealMatrix{{0.0, 1.0, 0.0},
                    {0.0, 0.0, 1.0},
                    {0.9596, -2.9196, 2.96}};
}

RealMatrix example_4state() {
  return RealMatrix{{0.0, 1.0, 0.0, 0.0},
                    {0.0, 0.0, 1.0, 0.0},
                    {0.0, 0.0, 0.0, 1.0},
                    {-1.5629, 5.6007, -7.5179, 4.48}};
}

}  // namespace

TEST_CASE("determinant: small hand values") {
  CHECK(determinant(RealMatrix{{3.0}}) == 3.0);
  CHECK(determinant(RealMatrix{{2.0, 1.0}, {1.0, 3.0}}) == doctest::Approx(5.0));
  CHECK(determinant(RealMatrix{{1.0, 2.0, 3.0},
                               {4.0, 5.0, 6.0},
                               {7.0, 8.0, 10.0}}) == doctest::Approx(-3.0));
  CHECK(determinant(RealMatrix::identity(5)) == doctest::Approx(1.0));
}

TEST_CASE("determinant: row swap flips the sign") {
  const RealMatrix m{{0.0, 1.0}, {1.0, 0.0}};
  CHECK(determinant(m) == doctest::Approx(-1.0));
}

TEST_CASE("determinant: transpose invariance") {
  const RealMatrix m{{1.0, 2.0, 0.5}, {-3.0, 0.0, 1.0}, {2.0, 1.0, 1.0}};
  CHECK(determinant(m) ==
        doctest::Approx(determinant(RealMatrix(m.mat().transpose().eval()))));
}

TEST_CASE("determinant: matches cofactor expansion on random matrices") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int n = 1; n <= 7; ++n) {
    for (int t = 0; t < 40; ++t) {
      Eigen::MatrixXd m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = dist(rng);
      const double got = determinant(RealMatrix(m));
      const double want = cofactor_det(m);
      CHECK(got == doctest::Approx(want).epsilon(1e-9));
    }
  }
}

TEST_CASE("determinant: companion-form state matrices") {
  // Product of the eigenvalues: 0.9596 for the 3-state example, 1.5629 for
  // the 4-state one.
  CHECK(determinant(example_3state()) == doctest::Approx(0.9596).epsilon(1e-12));
  CHECK(determinant(example_4state()) == doctest::Approx(1.5629).epsilon(1e-12));
}

TEST_CASE("determinant: rejects non-square input") {
  CHECK_THROWS_AS(determinant(RealMatrix{{1.0, 2.0}}), DimensionError);
}

TEST_CASE("invert: reconstructs the identity") {
  const RealMatrix m{{2.0, 1.0, 0.0}, {1.0, 3.0, 1.0}, {0.0, 1.0, 4.0}};
  const RealMatrix inv = invert(m);
  const Eigen::MatrixXd prod = m.mat() * inv.mat();
  CHECK((prod - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("invert: singular matrix is rejected with its determinant") {
  const RealMatrix m{{1.0, 2.0}, {2.0, 4.0}};
  try {
    invert(m);
    FAIL("expected SingularMatrixError");
  } catch (const SingularMatrixError& e) {
    CHECK(std::abs(e.determinant()) <= 1e-300);
  }
}

TEST_CASE("eig_real_distinct: 3-state example spectrum") {
  const Spectrum sp = eig_real_distinct(example_3state());
  REQUIRE(sp.eigenvalues.size() == 3);
  CHECK(sp.eigenvalues[0] == doctest::Approx(0.95171573).epsilon(1e-6));
  CHECK(sp.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sp.eigenvalues[2] == doctest::Approx(1.00828427).epsilon(1e-6));

  // W A W^{-1} = diag(lambda)
  const Eigen::MatrixXd D =
      sp.W.mat() * example_3state().mat() * sp.W_inv.mat();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double want = i == j ? sp.eigenvalues[i] : 0.0;
      CHECK(D(i, j) == doctest::Approx(want).epsilon(1e-9));
    }
  }
  CHECK(sp.det_W_abs > 0.0);
  CHECK(sp.det_W_abs ==
        doctest::Approx(std::abs(determinant(sp.W))).epsilon(1e-9));
  CHECK(sp.condition_estimate >= 1.0);
  CHECK_FALSE(sp.gamma.has_value());

  // Eigenvector convention: unit norm, first nonzero component positive.
  for (int j = 0; j < 3; ++j) {
    CHECK(sp.W_inv.mat().col(j).norm() == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 0; i < 3; ++i) {
      const double v = sp.W_inv(i, j);
      if (v != 0.0) {
        CHECK(v > 0.0);
        break;
      }
    }
  }
}

TEST_CASE("eig_real_distinct: 4-state example spectrum, ascending order") {
  const Spectrum sp = eig_real_distinct(example_4state());
  REQUIRE(sp.eigenvalues.size() == 4);
  CHECK(sp.eigenvalues[0] == doctest::Approx(1.0407).epsilon(1e-4));
  CHECK(sp.eigenvalues[1] == doctest::Approx(1.0755).epsilon(1e-4));
  CHECK(sp.eigenvalues[2] == doctest::Approx(1.1589).epsilon(1e-4));
  CHECK(sp.eigenvalues[3] == doctest::Approx(1.2049).epsilon(1e-4));
  double prod = 1.0;
  for (double l : sp.eigenvalues) prod *= l;
  CHECK(prod == doctest::Approx(1.5629).epsilon(1e-10));
}

TEST_CASE("eig_real_distinct: model overload fills the input gains") {
  const SystemModel model("ex1", example_3state(),
                          RealMatrix{{0.0}, {0.0}, {1.0}});
  const Spectrum sp = eig_real_distinct(model);
  REQUIRE(sp.gamma.has_value());
  REQUIRE(sp.beta.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(sp.beta[i] == (*sp.gamma)(i, 0));
    CHECK(sp.beta[i] != 0.0);
  }
  // gamma = W B
  const Eigen::MatrixXd want = sp.W.mat() * model.B().mat();
  for (int i = 0; i < 3; ++i) {
    CHECK((*sp.gamma)(i, 0) == doctest::Approx(want(i, 0)));
  }
}

TEST_CASE("eig_real_distinct: unsupported spectra are classified") {
  // Rotation: complex pair.
  try {
    eig_real_distinct(RealMatrix{{0.0, -1.0}, {1.0, 0.0}});
    FAIL("expected SpectralUnsupported");
  } catch (const SpectralUnsupported& e) {
    CHECK(e.issue() == SpectralIssue::Complex);
  }
  // Identity: repeated eigenvalue.
  try {
    eig_real_distinct(RealMatrix{{1.0, 0.0}, {0.0, 1.0}});
    FAIL("expected SpectralUnsupported");
  } catch (const SpectralUnsupported& e) {
    CHECK(e.issue() == SpectralIssue::Repeated);
  }
  // Negative eigenvalue.
  try {
    eig_real_distinct(RealMatrix{{-1.0, 0.0}, {0.0, 2.0}});
    FAIL("expected SpectralUnsupported");
  } catch (const SpectralUnsupported& e) {
    CHECK(e.issue() == SpectralIssue::NonPositive);
  }
}

TEST_CASE("eig_real_distinct: separation tolerance is adjustable") {
  const RealMatrix near{{1.0, 0.0}, {0.0, 1.0 + 1e-11}};
  CHECK_THROWS_AS(eig_real_distinct(near), SpectralUnsupported);
  const Spectrum sp = eig_real_distinct(near, 1e-13);
  CHECK(sp.eigenvalues[1] > sp.eigenvalues[0]);
}

TEST_CASE("controllability_matrix: block layout from iterated products") {
  const SystemModel model("m", RealMatrix{{1.0, 0.0}, {0.0, 2.0}},
                          RealMatrix{{1.0, 0.0}, {0.0, 1.0}});
  const RealMatrix P = controllability_matrix(model, 2);
  REQUIRE(P.rows() == 2);
  REQUIRE(P.cols() == 4);
  // [B, AB]
  CHECK(P(0, 0) == 1.0);
  CHECK(P(1, 1) == 1.0);
  CHECK(P(0, 2) == 1.0);
  CHECK(P(1, 2) == 0.0);
  CHECK(P(1, 3) == 2.0);
}

TEST_CASE("controllability_matrix: second block of the 3-state example") {
  const SystemModel model("ex1", example_3state(),
                          RealMatrix{{0.0}, {0.0}, {1.0}});
  const RealMatrix P = controllability_matrix(model, 2);
  // A B = (0, 1, 2.96)
  CHECK(P(0, 1) == 0.0);
  CHECK(P(1, 1) == 1.0);
  CHECK(P(2, 1) == doctest::Approx(2.96));
}

TEST_CASE("controllability_matrix: empty horizon is rejected") {
  const SystemModel model("m", RealMatrix{{2.0}}, RealMatrix{{1.0}});
  CHECK_THROWS_AS(controllability_matrix(model, 0), DimensionError);
  CHECK_THROWS_AS(controllability_matrix(model, -3), DimensionError);
}

TEST_CASE("numeric_rank") {
  CHECK(numeric_rank(RealMatrix::identity(4)) == 4);
  CHECK(numeric_rank(RealMatrix{{1.0, 2.0}, {2.0, 4.0}}) == 1);
  CHECK(numeric_rank(RealMatrix{{1.0, 2.0, 3.0}, {2.0, 4.0, 6.0}}) == 1);
  const SystemModel ex2("ex2", example_4state(),
                        RealMatrix{{0.0}, {0.0}, {0.0}, {1.0}});
  CHECK(numeric_rank(controllability_matrix(ex2, 4)) == 4);
  CHECK(numeric_rank(controllability_matrix(ex2, 3)) == 3);
}

TEST_CASE("RealMatrix and SystemModel invariants") {
  CHECK_THROWS_AS(RealMatrix(Eigen::MatrixXd(0, 0)), DimensionError);
  CHECK_THROWS_AS(
      RealMatrix({{1.0, 2.0}, {3.0}}), DimensionError);
  Eigen::MatrixXd bad(1, 1);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(RealMatrix{bad}, Error);
  // B rows must match A.
  CHECK_THROWS_AS(SystemModel("m", RealMatrix{{1.0}}, RealMatrix{{1.0}, {2.0}}),
                  DimensionError);
  // A must be square.
  CHECK_THROWS_AS(SystemModel("m", RealMatrix{{1.0, 2.0}}, RealMatrix{{1.0}}),
                  DimensionError);
}
