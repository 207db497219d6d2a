#pragma once

#include <Eigen/Dense>

namespace bell {

// Symmetric Toeplitz kernel whose quadratic form in the Schmidt vector
// equals the CGLMP functional under the conjectured best measurements:
//   M_ij = t_|i-j|,  t_k = 2 delta_{k0} - (1/d) sec(k pi / (2d)).
// Only the first column is stored.
struct KernelMatrix {
  int d = 0;
  Eigen::VectorXd first_col;
};

KernelMatrix kernel_matrix(int d);

// Densified M, for small-d solvers and tests.
Eigen::MatrixXd dense_kernel(const KernelMatrix& kernel);

// lambda^T M lambda via the Toeplitz structure; O(d) memory.
double quadratic_form(const KernelMatrix& kernel, const Eigen::VectorXd& lambda);

// Functional value for the maximally entangled state lambda_i = 1/sqrt(d),
//   2 - (1/d^2) sum_{k=-(d-1)}^{d-1} (d-|k|) sec(k pi / (2d)),
// computed in O(d). Tends to 2 - 16 Cat / pi^2 as d -> infinity.
double maxent_value(int d);

// The d -> infinity limit constant 2 - 16 Cat / pi^2, Cat = Catalan's constant.
double maxent_limit();

}  // namespace bell
