#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "bell/kernel.hpp"

namespace bell {

enum class EigMethod { Dense, Lanczos };

// Minimal eigenpair of the kernel. The eigenvector is sign-canonicalized
// to nonnegative entries (Perron property of M = 2I - C, C entrywise
// positive).
struct EigenResult {
  double eigenvalue = 0.0;
  Eigen::VectorXd eigenvector;
  double residual = 0.0;  // ||M v - theta v||_2
  int iterations = 0;
  EigMethod method = EigMethod::Dense;
  std::uint64_t seed = 0;  // Lanczos starting-vector seed
};

// Symmetric Toeplitz operator applied through a circulant embedding of
// size next_pow2(2d); one matvec costs two FFTs of that size.
class ToeplitzOperator {
 public:
  explicit ToeplitzOperator(const Eigen::VectorXd& first_col);

  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
  int dim() const { return d_; }

 private:
  int d_;
  std::size_t n_;
  std::vector<std::complex<double>> spectrum_;  // FFT of the circulant column
};

// Convenience wrapper for a single product M v.
Eigen::VectorXd toeplitz_matvec(const Eigen::VectorXd& first_col,
                                const Eigen::VectorXd& v);

// Reference O(d^2) product, used as the independent oracle in tests and
// residual re-verification.
Eigen::VectorXd toeplitz_matvec_direct(const Eigen::VectorXd& first_col,
                                       const Eigen::VectorXd& v);

// Full symmetric eigendecomposition of the densified kernel.
EigenResult dense_min_eig(const KernelMatrix& kernel, int dense_cap = 2000);

// Thrown when Lanczos does not reach the tolerance; carries the best
// Ritz pair found so far.
class LanczosError : public std::runtime_error {
 public:
  LanczosError(const std::string& what, EigenResult best)
      : std::runtime_error(what), best_so_far(std::move(best)) {}
  EigenResult best_so_far;
};

// Lanczos with full reorthogonalization on the FFT-backed operator.
// Deterministic for fixed (d, tol, seed). Converged when the residual of
// the smallest Ritz pair drops below tol.
EigenResult lanczos_min_eig(const KernelMatrix& kernel, double tol = 1e-8,
                            int max_iter = 400, std::uint64_t seed = 42);

}  // namespace bell
