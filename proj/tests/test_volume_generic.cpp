#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "zonovol/combinatorics.hpp"
#include "zonovol/linalg.hpp"
#include "zonovol/volume_generic.hpp"

using namespace zonovol;

namespace {

SystemModel example_3state() {
  return SystemModel("ex1",
                     RealMatrix{{0.0, 1.0, 0.0},
                                {0.0, 0.0, 1.0},
                                {0.9596, -2.9196, 2.96}},
                     RealMatrix{{0.0}, {0.0}, {1.0}});
}

SystemModel random_model(std::mt19937_64& rng, int n, int r) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd A(n, n), B(n, r);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = dist(rng);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < r; ++j) B(i, j) = dist(rng);
  return SystemModel("rnd", RealMatrix(A), RealMatrix(B));
}

}  // namespace

TEST_CASE("volume_exact: unit boxes") {
  CHECK(volume_exact(RealMatrix::identity(2)).volume == doctest::Approx(1.0));
  CHECK(volume_exact(RealMatrix::identity(3)).volume == doctest::Approx(1.0));
  CHECK(volume_exact(RealMatrix{{2.0, 0.0}, {0.0, 3.0}}).volume ==
        doctest::Approx(6.0));
}

TEST_CASE("volume_exact: three generators in the plane") {
  // Selections: {1,2} -> 1, {1,3} -> 1, {2,3} -> -1; volume 3.
  const VolumeResult res =
      volume_exact(RealMatrix{{1.0, 0.0, 1.0}, {0.0, 1.0, 1.0}});
  CHECK(res.volume == doctest::Approx(3.0));
  CHECK(res.det_count == 3);
  CHECK(res.method == VolumeMethod::Exact);
  CHECK(res.mult_count == 0);
  CHECK(res.notes.empty());
}

TEST_CASE("volume_exact: selection count is C(m, n)") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int n = 1; n <= 4; ++n) {
    for (int m = n; m <= n + 5; ++m) {
      Eigen::MatrixXd Z(n, m);
      for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i) Z(i, j) = dist(rng);
      CHECK(volume_exact(RealMatrix(Z)).det_count ==
            binomial(m, n));
    }
  }
}

TEST_CASE("volume_exact: rank-deficient inputs report zero with a note") {
  const VolumeResult thin = volume_exact(RealMatrix{{1.0}, {2.0}});
  CHECK(thin.volume == 0.0);
  CHECK(thin.det_count == 0);
  CHECK(thin.notes.find("rank-deficient") != std::string::npos);

  const VolumeResult flat =
      volume_exact(RealMatrix{{1.0, 2.0, 3.0}, {2.0, 4.0, 6.0}});
  CHECK(flat.volume == 0.0);
  CHECK(flat.notes.find("rank-deficient") != std::string::npos);
}

TEST_CASE("volume_exact: invariant under column permutation") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 3;
    const int m = n + 3;
    Eigen::MatrixXd Z(n, m);
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < n; ++i) Z(i, j) = dist(rng);
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Eigen::MatrixXd Zp(n, m);
    for (int j = 0; j < m; ++j) Zp.col(j) = Z.col(perm[j]);
    const double a = volume_exact(RealMatrix(Z)).volume;
    const double b = volume_exact(RealMatrix(Zp)).volume;
    CHECK(std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)));
  }
}

TEST_CASE("volume_exact: scales with |det T| under linear maps") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd Z(3, 6), T(3, 3);
  for (int j = 0; j < 6; ++j)
    for (int i = 0; i < 3; ++i) Z(i, j) = dist(rng);
  do {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) T(i, j) = dist(rng);
  } while (std::abs(determinant(RealMatrix(T))) < 0.1);
  const double lhs = volume_exact(RealMatrix(T * Z)).volume;
  const double rhs =
      std::abs(determinant(RealMatrix(T))) * volume_exact(RealMatrix(Z)).volume;
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("volume_exact: nondecreasing as generators accumulate") {
  const SystemModel model = example_3state();
  double prev = 0.0;
  for (int horizon = 3; horizon <= 10; ++horizon) {
    const double v =
        volume_exact(controllability_matrix(model, horizon)).volume;
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("volume_recursive: agrees with exact enumeration") {
  std::mt19937_64 rng(47);
  for (int n = 2; n <= 4; ++n) {
    for (int r = 1; r <= 2; ++r) {
      for (int t = 0; t < 10; ++t) {
        const SystemModel model = random_model(rng, n, r);
        const int first = (n + r - 1) / r;
        for (int horizon = first; horizon <= first + 4; ++horizon) {
          const double exact =
              volume_exact(controllability_matrix(model, horizon)).volume;
          const double rec = volume_recursive(model, horizon).volume;
          CHECK(std::abs(exact - rec) <=
                1e-9 * std::max({1.0, std::abs(exact), std::abs(rec)}));
        }
      }
    }
  }
}

TEST_CASE("volume_recursive: base cases pass through exact seeds") {
  const SystemModel model = example_3state();
  for (int horizon : {3, 4}) {
    const VolumeResult rec = volume_recursive(model, horizon);
    const VolumeResult exact =
        volume_exact(controllability_matrix(model, horizon));
    CHECK(rec.volume == doctest::Approx(exact.volume).epsilon(1e-12));
    CHECK(rec.method == VolumeMethod::Recursive);
  }
}

TEST_CASE("volume_recursive: horizons below the seed are degenerate") {
  const SystemModel model = example_3state();
  const VolumeResult res = volume_recursive(model, 2);
  CHECK(res.volume == 0.0);
  CHECK(res.notes.find("rank-deficient") != std::string::npos);
}

TEST_CASE("volume_recursive: determinant counter accounting") {
  // Seeds C(3,3) + C(4,3), |det A| once, then k-2 cross determinants per
  // step: 1 + 1 + 4 + sum_{k=5..10} (k-2) = 39 at N = 10.
  const VolumeResult res = volume_recursive(example_3state(), 10);
  CHECK(res.det_count == 39);
  CHECK(res.mult_count == 0);
  CHECK(res.horizon == 10);
}

TEST_CASE("volume_recursive: rejects an empty horizon") {
  CHECK_THROWS_AS(volume_recursive(example_3state(), 0), DimensionError);
}

TEST_CASE("volume_recursive: multi-input seed horizon") {
  // n = 3, r = 2: the first seed sits at N = 2 (4 columns).
  std::mt19937_64 rng(53);
  const SystemModel model = random_model(rng, 3, 2);
  const VolumeResult at1 = volume_recursive(model, 1);
  CHECK(at1.volume == 0.0);
  CHECK(at1.notes.find("rank-deficient") != std::string::npos);
  const double exact2 =
      volume_exact(controllability_matrix(model, 2)).volume;
  CHECK(volume_recursive(model, 2).volume == doctest::Approx(exact2));
}
