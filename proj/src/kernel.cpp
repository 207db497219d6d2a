#include "bell/kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bell {

KernelMatrix kernel_matrix(int d) {
  if (d < 2) throw std::invalid_argument("kernel_matrix: d must be >= 2");
  KernelMatrix kernel;
  kernel.d = d;
  kernel.first_col.resize(d);
  const double step = std::numbers::pi / (2.0 * d);
  // k pi / (2d) stays strictly below pi/2 for k <= d-1, so every secant
  // is finite; the largest is about 2d/pi, tamed by the 1/d factor.
  for (int k = 0; k < d; ++k) {
    kernel.first_col[k] = -1.0 / (d * std::cos(k * step));
  }
  kernel.first_col[0] += 2.0;
  return kernel;
}

Eigen::MatrixXd dense_kernel(const KernelMatrix& kernel) {
  const int d = kernel.d;
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      m(i, j) = kernel.first_col[std::abs(i - j)];
    }
  }
  return m;
}

double quadratic_form(const KernelMatrix& kernel, const Eigen::VectorXd& lambda) {
  const int d = kernel.d;
  if (lambda.size() != d) {
    throw std::invalid_argument("quadratic_form: length mismatch");
  }
  double value = kernel.first_col[0] * lambda.squaredNorm();
  for (int k = 1; k < d; ++k) {
    double corr = 0.0;
    for (int i = 0; i + k < d; ++i) corr += lambda[i] * lambda[i + k];
    value += 2.0 * kernel.first_col[k] * corr;
  }
  return value;
}

double maxent_value(int d) {
  if (d < 2) throw std::invalid_argument("maxent_value: d must be >= 2");
  const double step = std::numbers::pi / (2.0 * d);
  double sum = static_cast<double>(d);  // k = 0 term
  for (int k = 1; k < d; ++k) {
    sum += 2.0 * (d - k) / std::cos(k * step);
  }
  return 2.0 - sum / (static_cast<double>(d) * d);
}

double maxent_limit() {
  constexpr double kCatalan = 0.91596559417721901505;
  return 2.0 - 16.0 * kCatalan / (std::numbers::pi * std::numbers::pi);
}

}  // namespace bell
