#include <doctest.h>

#include "support/fixtures.hpp"

using namespace subdivqi;

namespace {

void check_close(double got, double num, double den, double tol = 1e-14) {
  CHECK(got == doctest::Approx(num / den).epsilon(tol));
}

}  // namespace

TEST_CASE("quad weights at the regular valence") {
  WeightProfile p = weights_cc(4);
  REQUIRE(p.w.size() == 6);
  check_close(p.w[0], 100, 9);
  check_close(p.w[1], -40, 9);
  check_close(p.w[2], 5, 9);
  check_close(p.w[3], 16, 9);
  check_close(p.w[4], -2, 9);
  check_close(p.w[5], 1, 36);
}

TEST_CASE("quad weights at valence 3") {
  WeightProfile p = weights_cc(3);
  check_close(p.w[5], 39, 230);
  check_close(p.w[2], 807, 230);
  check_close(p.w[4], -312, 230);
  check_close(p.w[1], -6456, 230);
  check_close(p.w[3], 2496, 230);
  check_close(p.w[0], 11444, 230);
}

TEST_CASE("triangle weights at the regular valence") {
  WeightProfile p = weights_loop(6);
  REQUIRE(p.w.size() == 4);
  check_close(p.w[0], 31, 6);
  check_close(p.w[1], -8, 9);
  check_close(p.w[2], -1, 36);
  check_close(p.w[3], 2, 9);
}

TEST_CASE("triangle weights at valence 5") {
  WeightProfile p = weights_loop(5);
  CHECK(p.w[2] == doctest::Approx(-0.043923).epsilon(1e-4));
}

TEST_CASE("weight relations hold exactly") {
  for (int n = 3; n <= 12; ++n) {
    WeightProfile cc = weights_cc(n);
    CHECK(cc.w[4] == -8.0 * cc.w[5]);
    CHECK(cc.w[1] == -8.0 * cc.w[2]);
    CHECK(cc.w[3] == 64.0 * cc.w[5]);
    CHECK(cc.w[0] == 1.0 - n * (49.0 * cc.w[5] - 7.0 * cc.w[2]));

    WeightProfile lp = weights_loop(n);
    CHECK(lp.w[1] == 32.0 * lp.w[2]);
    CHECK(lp.w[3] == -8.0 * lp.w[2]);
    CHECK(lp.w[0] == 1.0 - 25.0 * n * lp.w[2]);
  }

  MLoopMasks masks = testing::synthetic_masks(3, 12);
  for (int n = 3; n <= 12; ++n) {
    WeightProfile ml = weights_mloop(n, masks);
    CHECK(ml.w[1] == 32.0 * ml.w[2]);
    CHECK(ml.w[3] == -8.0 * ml.w[2]);
  }
}

TEST_CASE("orbit-weighted sums equal one") {
  MLoopMasks masks = testing::synthetic_masks(3, 12);
  for (int n = 3; n <= 12; ++n) {
    for (const WeightProfile& p :
         {weights_cc(n), weights_loop(n), weights_mloop(n, masks)}) {
      double sum = 0;
      std::vector<int> sizes = p.orbit_sizes();
      for (std::size_t i = 0; i < p.w.size(); ++i) sum += sizes[i] * p.w[i];
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(p.expand().sum() == doctest::Approx(1.0).epsilon(1e-11));
    }
  }
}

TEST_CASE("loop-equivalent masks give the plain triangle weights") {
  MLoopMasks masks = MLoopMasks::loop_equivalent(3, 12);
  for (int n = 3; n <= 12; ++n) {
    WeightProfile a = weights_loop(n);
    WeightProfile b = weights_mloop(n, masks);
    for (int i = 0; i < 4; ++i) CHECK(b.w[i] == doctest::Approx(a.w[i]).epsilon(1e-14));
  }
}

TEST_CASE("closed forms agree with the numeric center row") {
  for (int n = 3; n <= 12; ++n) {
    {
      Mat A = local_A(SchemeId::catmull_clark(), n);
      Eigen::VectorXd numeric = solve_row(A, 0);
      Eigen::VectorXd closed = weights_cc(n).expand();
      CHECK((numeric - closed).lpNorm<Eigen::Infinity>() <= 1e-10);
    }
    {
      Mat A = local_A(SchemeId::loop(), n);
      Eigen::VectorXd numeric = solve_row(A, 0);
      Eigen::VectorXd closed = weights_loop(n).expand();
      CHECK((numeric - closed).lpNorm<Eigen::Infinity>() <= 1e-10);
    }
  }
  SchemeId mloop = SchemeId::modified_loop(testing::synthetic_masks(3, 12));
  for (int n = 3; n <= 8; ++n) {
    Mat A = local_A(mloop, n);
    Eigen::VectorXd numeric = solve_row(A, 0);
    Eigen::VectorXd closed = weights_mloop(n, *mloop.masks).expand();
    CHECK((numeric - closed).lpNorm<Eigen::Infinity>() <= 1e-10);
  }
}

TEST_CASE("solve_row basics") {
  Mat I = Mat::Identity(7, 7);
  Eigen::VectorXd w = solve_row(I, 3);
  CHECK(w[3] == 1.0);
  CHECK(w.lpNorm<1>() == 1.0);

  Mat A = cubic_bspline_A();
  Eigen::VectorXd center = solve_row(A, 2);
  const double expect[5] = {1.0 / 6, -8.0 / 6, 20.0 / 6, -8.0 / 6, 1.0 / 6};
  for (int i = 0; i < 5; ++i)
    CHECK(center[i] == doctest::Approx(expect[i]).epsilon(1e-14));

  Mat singular = Mat::Zero(4, 4);
  CHECK_THROWS_AS(solve_row(singular, 0), Error);
}

TEST_CASE("regular quad weights are the squared univariate weights") {
  // orbit representatives against products of [1,-8,20,-8,1]/6
  WeightProfile p = weights_cc(4);
  const double u[5] = {1.0 / 6, -8.0 / 6, 20.0 / 6, -8.0 / 6, 1.0 / 6};
  CHECK(p.w[0] == doctest::Approx(u[2] * u[2]).epsilon(1e-14));  // center
  CHECK(p.w[1] == doctest::Approx(u[1] * u[2]).epsilon(1e-14));  // spoke midpoint
  CHECK(p.w[2] == doctest::Approx(u[0] * u[2]).epsilon(1e-14));  // ring vertex
  CHECK(p.w[3] == doctest::Approx(u[1] * u[1]).epsilon(1e-14));  // centroid
  CHECK(p.w[4] == doctest::Approx(u[0] * u[1]).epsilon(1e-14));  // ring midpoint
  CHECK(p.w[5] == doctest::Approx(u[0] * u[0]).epsilon(1e-14));  // diagonal vertex
}
