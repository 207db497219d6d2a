#include <doctest.h>

#include <cmath>
#include <random>

#include "bell/eigensolver.hpp"
#include "bell/kernel.hpp"
#include "bell/quantum.hpp"

using namespace bell;

TEST_SUITE("eigensolver") {

TEST_CASE("dense minimal eigenpairs for small d") {
  const EigenResult r2 = dense_min_eig(kernel_matrix(2));
  CHECK(r2.eigenvalue ==
        doctest::Approx((3.0 - std::sqrt(2.0)) / 2.0).epsilon(1e-14));
  CHECK(r2.eigenvector[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(r2.eigenvector[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

  const EigenResult r3 = dense_min_eig(kernel_matrix(3));
  CHECK(r3.eigenvalue ==
        doctest::Approx((12.0 - std::sqrt(33.0)) / 9.0).epsilon(1e-14));
  CHECK(r3.eigenvector[0] == doctest::Approx(0.6169).epsilon(1e-4));
  CHECK(r3.eigenvector[1] == doctest::Approx(0.4888).epsilon(1e-4));

  const EigenResult r5 = dense_min_eig(kernel_matrix(5));
  CHECK(r5.eigenvalue == doctest::Approx(0.5937).epsilon(1e-4));
  CHECK(r5.eigenvector[0] == doctest::Approx(0.5368).epsilon(1e-4));
  CHECK(r5.eigenvector[1] == doctest::Approx(0.3859).epsilon(1e-4));

  for (const EigenResult* r : {&r2, &r3, &r5}) {
    CHECK(std::abs(r->eigenvector.norm() - 1.0) < 1e-12);
    CHECK(r->residual < 1e-12);
    CHECK(r->eigenvector.minCoeff() >= 0.0);
  }

  CHECK_THROWS_AS(dense_min_eig(kernel_matrix(3000)), std::invalid_argument);
}

TEST_CASE("toeplitz_matvec basic cases") {
  Eigen::Vector2d identity_col(1.0, 0.0), v(3.0, 4.0);
  Eigen::VectorXd out = toeplitz_matvec(identity_col, v);
  CHECK(out[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(out[1] == doctest::Approx(4.0).epsilon(1e-14));

  Eigen::Vector2d exchange_col(0.0, 1.0), w(1.0, 2.0);
  out = toeplitz_matvec(exchange_col, w);
  CHECK(out[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(out[1] == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(toeplitz_matvec(Eigen::VectorXd::Ones(3), Eigen::VectorXd::Ones(4)),
                  std::invalid_argument);
}

TEST_CASE("toeplitz_matvec matches the direct product on random inputs") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int d : {3, 17, 256, 4097}) {
    Eigen::VectorXd col(d), v(d);
    for (int i = 0; i < d; ++i) {
      col[i] = gauss(rng);
      v[i] = gauss(rng);
    }
    const Eigen::VectorXd fast = toeplitz_matvec(col, v);
    const Eigen::VectorXd direct = toeplitz_matvec_direct(col, v);
    CHECK((fast - direct).norm() / direct.norm() < 1e-10);
  }
}

TEST_CASE("lanczos agrees with the dense solver") {
  std::vector<int> dims;
  for (int d = 2; d <= 64; ++d) dims.push_back(d);
  for (int d = 100; d <= 500; d += 50) dims.push_back(d);
  for (int d : dims) {
    const KernelMatrix k = kernel_matrix(d);
    const EigenResult dense = dense_min_eig(k);
    const EigenResult lanczos = lanczos_min_eig(k, 1e-10, 400, 42);
    CHECK(std::abs(lanczos.eigenvalue - dense.eigenvalue) < 1e-8);
    CHECK(std::abs(lanczos.eigenvector.dot(dense.eigenvector)) > 1.0 - 1e-8);
    CHECK(lanczos.residual <= 1e-10);
  }
}

TEST_CASE("residual contract re-verified with an independent matvec") {
  for (int d : {100, 1000}) {
    const KernelMatrix k = kernel_matrix(d);
    const EigenResult r = lanczos_min_eig(k, 1e-9, 400, 42);
    const Eigen::VectorXd mv = toeplitz_matvec_direct(k.first_col, r.eigenvector);
    CHECK((mv - r.eigenvalue * r.eigenvector).norm() <= 1e-9);
  }
}

TEST_CASE("lanczos is deterministic for fixed seed") {
  const KernelMatrix k = kernel_matrix(777);
  const EigenResult a = lanczos_min_eig(k, 1e-9, 400, 123);
  const EigenResult b = lanczos_min_eig(k, 1e-9, 400, 123);
  CHECK(a.eigenvalue == b.eigenvalue);
  CHECK(a.iterations == b.iterations);
  CHECK((a.eigenvector - b.eigenvector).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.seed == 123);
}

TEST_CASE("non-convergence carries the best Ritz pair") {
  const KernelMatrix k = kernel_matrix(5000);
  try {
    lanczos_min_eig(k, 1e-14, 2, 42);
    FAIL("expected LanczosError");
  } catch (const LanczosError& e) {
    CHECK(e.best_so_far.eigenvector.size() == 5000);
    CHECK(e.best_so_far.residual > 1e-14);
    CHECK(e.best_so_far.iterations == 2);
  }
}

TEST_CASE("optimal state at d = 10^4 has the U shape") {
  const EigenResult r = lanczos_min_eig(kernel_matrix(10000), 1e-8, 400, 42);
  CHECK(r.eigenvector.minCoeff() > 0.0);
  for (int i = 0; i < 5000; ++i) {
    CHECK(std::abs(r.eigenvector[i] - r.eigenvector[9999 - i]) < 1e-6);
  }
  CHECK(r.eigenvector[0] > r.eigenvector[5000]);
}

TEST_CASE("scan grid: bounds, monotone violation, entropy decrease") {
  std::vector<int> grid;
  for (int d = 2; d <= 20; ++d) grid.push_back(d);
  for (int d : {50, 100, 1000, 10000}) grid.push_back(d);

  double prev_value = 2.0;
  double prev_entropy = 2.0;
  for (int d : grid) {
    const KernelMatrix k = kernel_matrix(d);
    const EigenResult r = d <= 500 ? dense_min_eig(k)
                                   : lanczos_min_eig(k, 1e-9, 400, 42);
    CHECK(r.eigenvalue > 0.0);
    CHECK(r.eigenvalue <= maxent_value(d) + 1e-12);
    CHECK(r.eigenvalue < prev_value);
    prev_value = r.eigenvalue;

    const SchmidtState s{d, r.eigenvector};
    const double entropy = entropy_normalized(s);
    if (d >= 3) CHECK(entropy < prev_entropy);
    prev_entropy = entropy;
  }
}

}  // TEST_SUITE
