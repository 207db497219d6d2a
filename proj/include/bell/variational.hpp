#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "bell/quantum.hpp"

namespace bell {

struct VariationalOptions {
  int restarts = 8;
  std::uint64_t seed = 42;
  double tol = 1e-9;       // simplex value-spread stopping criterion
  int max_iter = 200000;   // objective-evaluation budget per restart
  bool keep_trace = true;
};

struct OptimizationResult {
  int d = 0;
  double value = 0.0;
  SchmidtState state;
  std::array<MeasurementBasis, 4> bases;  // A1, A2, B1, B2
  int restarts_used = 0;
  std::uint64_t best_restart_seed = 0;
  bool converged = false;
  std::vector<std::pair<int, double>> trace;  // (evaluation count, best value)
};

// Minimizes the CGLMP functional over the Schmidt vector and all four
// projective measurements. State chart: hyperspherical angles; each basis
// U = U_conj * exp(iH) with H Hermitian from d^2 real parameters, so the
// conjectured optimum sits at H = 0. Multistart Nelder-Mead followed by a
// coordinate-wise quadratic polish; restart 0 starts at the conjectured
// optimum (best bases + kernel eigenvector), the rest are random.
OptimizationResult optimize_full(int d, const VariationalOptions& options = {});

// Max-norm distance between the probability table of (state, found bases)
// and (state, conjectured bases), minimized over the order-preserving
// outcome relabelings: identity and the joint reversal i -> d-1-i on both
// parties. Comparing tables quotients out phase and Schmidt-basis gauge.
double measurement_gauge_distance(const std::array<MeasurementBasis, 4>& found,
                                  const SchmidtState& state);

// Schmidt vector from hyperspherical angles (and its inverse); exposed for
// tests. The chart produces exactly unit-norm vectors.
Eigen::VectorXd schmidt_from_angles(const Eigen::VectorXd& angles);
Eigen::VectorXd angles_from_schmidt(const Eigen::VectorXd& lambda);

// U = base * exp(iH) with H Hermitian assembled from d^2 real parameters:
// d diagonal entries, then (re, im) pairs for the strict upper triangle.
Eigen::MatrixXcd unitary_from_params(const Eigen::MatrixXcd& base,
                                     const Eigen::VectorXd& params);

}  // namespace bell
