#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bell/eigensolver.hpp"
#include "bell/kernel.hpp"

using namespace bell;

TEST_SUITE("kernel") {

TEST_CASE("first column values") {
  const KernelMatrix k2 = kernel_matrix(2);
  CHECK(k2.first_col[0] == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(k2.first_col[1] == doctest::Approx(-std::sqrt(2.0) / 2.0).epsilon(1e-15));

  const KernelMatrix k3 = kernel_matrix(3);
  CHECK(k3.first_col[0] == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(k3.first_col[1] ==
        doctest::Approx(-1.0 / (3.0 * std::cos(std::numbers::pi / 6.0))).epsilon(1e-15));
  CHECK(k3.first_col[2] == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));

  for (int d : {2, 5, 17, 100}) {
    CHECK(kernel_matrix(d).first_col[0] ==
          doctest::Approx(2.0 - 1.0 / d).epsilon(1e-15));
  }
  CHECK_THROWS_AS(kernel_matrix(1), std::invalid_argument);
}

TEST_CASE("off-diagonal entries are negative and bounded") {
  for (int d : {2, 3, 10, 50, 200}) {
    const KernelMatrix k = kernel_matrix(d);
    for (int i = 1; i < d; ++i) {
      CHECK(k.first_col[i] < 0.0);
      // The largest magnitude is |t_{d-1}| = 1 / (d sin(pi/2d)), which
      // decreases to 2/pi from above as d grows.
      CHECK(std::abs(k.first_col[i]) <=
            1.0 / (d * std::sin(std::numbers::pi / (2.0 * d))) + 1e-12);
    }
  }
}

TEST_CASE("densifier is symmetric Toeplitz") {
  const KernelMatrix k = kernel_matrix(7);
  const Eigen::MatrixXd m = dense_kernel(k);
  CHECK((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0);
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) {
      CHECK(m(i, j) == k.first_col[std::abs(i - j)]);
    }
  }
}

TEST_CASE("quadratic form closed-form values") {
  const KernelMatrix k2 = kernel_matrix(2);
  Eigen::VectorXd v2 = Eigen::VectorXd::Constant(2, 1.0 / std::sqrt(2.0));
  CHECK(quadratic_form(k2, v2) ==
        doctest::Approx((3.0 - std::sqrt(2.0)) / 2.0).epsilon(1e-12));

  const double gamma = (std::sqrt(11.0) - std::sqrt(3.0)) / 2.0;
  Eigen::VectorXd v3(3);
  v3 << 1.0, gamma, 1.0;
  v3.normalize();
  CHECK(quadratic_form(kernel_matrix(3), v3) ==
        doctest::Approx((12.0 - std::sqrt(33.0)) / 9.0).epsilon(1e-12));

  for (int d : {2, 6, 31}) {
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(d);
    e0[0] = 1.0;
    CHECK(quadratic_form(kernel_matrix(d), e0) ==
          doctest::Approx(2.0 - 1.0 / d).epsilon(1e-15));
  }

  CHECK_THROWS_AS(quadratic_form(kernel_matrix(3), Eigen::VectorXd::Ones(4)),
                  std::invalid_argument);
}

TEST_CASE("quadratic form agrees with the dense evaluation") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int d : {2, 5, 16, 97}) {
    const KernelMatrix k = kernel_matrix(d);
    const Eigen::MatrixXd m = dense_kernel(k);
    for (int trial = 0; trial < 10; ++trial) {
      Eigen::VectorXd v(d);
      for (int i = 0; i < d; ++i) v[i] = gauss(rng);
      const double direct = v.dot(m * v);
      CHECK(quadratic_form(k, v) == doctest::Approx(direct).epsilon(1e-12));
    }
  }
}

TEST_CASE("maxent_value") {
  CHECK(maxent_value(2) == doctest::Approx(0.79289).epsilon(1e-5));
  CHECK(maxent_limit() == doctest::Approx(0.51509250915691).epsilon(1e-12));
  CHECK(std::abs(maxent_value(10000) - maxent_limit()) < 1e-3);

  // maxent_value is the quadratic form at the flat vector.
  for (int d : {2, 3, 9, 64}) {
    Eigen::VectorXd flat = Eigen::VectorXd::Constant(d, 1.0 / std::sqrt(double(d)));
    CHECK(maxent_value(d) ==
          doctest::Approx(quadratic_form(kernel_matrix(d), flat)).epsilon(1e-13));
  }
}

TEST_CASE("reference optima for d = 2..4") {
  // (value, coefficients); the minimal eigenvector of M realizes them.
  struct Row {
    int d;
    double value;
    std::vector<double> lambda;
  };
  const std::vector<Row> rows = {
      {2, 0.7929, {0.7071, 0.7071}},
      {3, 0.6950, {0.6169, 0.4888, 0.6169}},
      {4, 0.6352, {0.5686, 0.4204, 0.4204, 0.5686}},
  };
  for (const Row& row : rows) {
    Eigen::VectorXd v(row.d);
    for (int i = 0; i < row.d; ++i) v[i] = row.lambda[i];
    v.normalize();
    CHECK(std::abs(quadratic_form(kernel_matrix(row.d), v) - row.value) < 5e-4);
  }
}

TEST_CASE("minimal eigenvector is positive and reflection-symmetric") {
  for (int d = 2; d <= 200; ++d) {
    const EigenResult r = dense_min_eig(kernel_matrix(d));
    CHECK(r.eigenvector.minCoeff() > 0.0);
    for (int i = 0; i < d / 2; ++i) {
      CHECK(std::abs(r.eigenvector[i] - r.eigenvector[d - 1 - i]) < 1e-8);
    }
  }
}

}  // TEST_SUITE
