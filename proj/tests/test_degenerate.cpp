#include <doctest.h>

#include <cmath>
#include <random>

#include "bell/degenerate.hpp"
#include "bell/eigensolver.hpp"
#include "bell/inequality.hpp"
#include "bell/kernel.hpp"

using namespace bell;

namespace {

// Independent oracle: degenerate-measurement probabilities computed from
// their definition, P(i,j) = sum over block members of the squared
// amplitudes, then fed through the functional's four order terms.
double functional_by_definition(const std::array<DegenerateMeasurement, 4>& meas,
                                const Eigen::VectorXd& lambda) {
  const int D = meas[0].D;
  const int d = meas[0].d;
  auto prob = [&](const DegenerateMeasurement& alice,
                  const DegenerateMeasurement& bob, int i, int j) {
    double p = 0.0;
    for (int col_a : alice.grouping[i]) {
      for (int col_b : bob.grouping[j]) {
        std::complex<double> amp = 0.0;
        for (int k = 0; k < D; ++k) {
          amp += lambda[k] * std::conj(alice.base.vectors(k, col_a)) *
                 std::conj(bob.base.vectors(k, col_b));
        }
        p += std::norm(amp);
      }
    }
    return p;
  };
  double value = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i < j) value += prob(meas[1], meas[3], i, j);   // A2 < B2
      if (j < i) value += prob(meas[0], meas[3], i, j);   // B2 < A1
      if (i < j) value += prob(meas[0], meas[2], i, j);   // A1 < B1
      if (j <= i) value += prob(meas[1], meas[2], i, j);  // B1 <= A2
    }
  }
  return value;
}

std::array<DegenerateMeasurement, 4> random_config(int d, int D,
                                                   std::mt19937_64& rng) {
  const auto bases = conjectured_bases(D);
  std::uniform_int_distribution<int> block(0, d - 1);
  std::array<DegenerateMeasurement, 4> meas;
  for (int s = 0; s < 4; ++s) {
    MeasurementBasis rotated = bases[s];
    rotated.vectors = haar_unitary(D, rng) * bases[s].vectors;
    Grouping g;
    do {
      g.assign(d, {});
      for (int p = 0; p < D; ++p) g[block(rng)].push_back(p);
    } while (std::any_of(g.begin(), g.end(),
                         [](const auto& blk) { return blk.empty(); }));
    meas[s] = make_degenerate(rotated, g);
  }
  return meas;
}

}  // namespace

TEST_SUITE("degenerate") {

TEST_CASE("enumerate_groupings counts") {
  const auto c32 = enumerate_groupings(3, 2, GroupingRegime::Contiguous);
  REQUIRE(c32.size() == 2);
  CHECK(c32[0] == Grouping{{0}, {1, 2}});
  CHECK(c32[1] == Grouping{{0, 1}, {2}});

  CHECK(enumerate_groupings(5, 4, GroupingRegime::Contiguous).size() == 4);
  CHECK(enumerate_groupings(5, 2, GroupingRegime::General).size() == 30);
  CHECK_THROWS_AS(enumerate_groupings(4, 4, GroupingRegime::Contiguous),
                  std::invalid_argument);
  CHECK_THROWS_AS(enumerate_groupings(3, 5, GroupingRegime::General),
                  std::invalid_argument);
}

TEST_CASE("generated measurements are complete") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const auto meas = random_config(3, 7, rng);
    for (const auto& m : meas) {
      CHECK(completeness_residual(m) < 1e-10);
    }
  }
}

TEST_CASE("kernel extraction matches the probability pipeline") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (auto [d, D] : {std::pair{2, 5}, {3, 6}, {4, 7}}) {
    const auto meas = random_config(d, D, rng);
    const Eigen::MatrixXd kernel = functional_kernel(meas);
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd lambda(D);
      for (int i = 0; i < D; ++i) lambda[i] = gauss(rng);
      lambda.normalize();
      const double via_kernel = lambda.dot(kernel * lambda);
      const double direct = functional_by_definition(meas, lambda);
      CHECK(std::abs(via_kernel - direct) < 1e-9);
    }
  }
}

TEST_CASE("singleton groupings reproduce the nondegenerate pipeline") {
  for (int d : {2, 3, 4, 5}) {
    const DegenerateResult r =
        degenerate_min(d, d, DegenerateMode::Exhaustive);
    const double reference = dense_min_eig(kernel_matrix(d)).eigenvalue;
    CHECK(std::abs(r.min_value - reference) < 1e-10);
  }
}

TEST_CASE("exhaustive search over D = 5 recovers the D = d optima") {
  const double reference[3] = {0.7929, 0.6950, 0.6352};
  for (int d : {2, 3, 4}) {
    const DegenerateResult r =
        degenerate_min(d, 5, DegenerateMode::Exhaustive, 0, 42, 2);
    CHECK(std::abs(r.min_value - reference[d - 2]) < 1e-3);
    // No improvement over the D = d optimum beyond noise.
    const double exact = dense_min_eig(kernel_matrix(d)).eigenvalue;
    CHECK(r.min_value >= exact - 1e-9);
  }
}

TEST_CASE("random mode is deterministic and never undercuts") {
  const DegenerateResult a =
      degenerate_min(3, 20, DegenerateMode::Random, 100, 4242);
  const DegenerateResult b =
      degenerate_min(3, 20, DegenerateMode::Random, 100, 4242, 4);
  CHECK(a.min_value == b.min_value);
  CHECK(a.min_value >= 0.6950 - 1e-3);
  CHECK(a.samples == 100);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(degenerate_min(5, 3, DegenerateMode::Exhaustive),
                  std::invalid_argument);
  CHECK_THROWS_AS(degenerate_min(2, 5, DegenerateMode::Random, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(degenerate_min(1, 5, DegenerateMode::Exhaustive),
                  std::invalid_argument);
}

}  // TEST_SUITE
