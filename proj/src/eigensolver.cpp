#include "bell/eigensolver.hpp"

#include <cmath>
#include <random>

#include "bell/fft.hpp"

namespace bell {

namespace {

// Flip the sign if the largest-magnitude entry is negative, then enforce
// the Perron property: entries more negative than -1e-9 indicate a solver
// bug, smaller negatives are floating-point noise and get clamped.
void canonicalize(Eigen::VectorXd& v) {
  int imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v[imax] < 0.0) v = -v;
  for (int i = 0; i < v.size(); ++i) {
    if (v[i] < 0.0) {
      if (v[i] < -1e-9) {
        throw std::runtime_error("canonicalize: Perron violation");
      }
      v[i] = 0.0;
    }
  }
}

}  // namespace

ToeplitzOperator::ToeplitzOperator(const Eigen::VectorXd& first_col)
    : d_(static_cast<int>(first_col.size())),
      n_(next_pow2(2 * static_cast<std::size_t>(d_))) {
  // First column of the embedding circulant:
  // (t_0 .. t_{d-1}, 0 pad, t_{d-1} .. t_1).
  spectrum_.assign(n_, {0.0, 0.0});
  for (int k = 0; k < d_; ++k) spectrum_[k] = first_col[k];
  for (int k = 1; k < d_; ++k) spectrum_[n_ - k] = first_col[k];
  fft(spectrum_, false);
}

Eigen::VectorXd ToeplitzOperator::apply(const Eigen::VectorXd& v) const {
  if (v.size() != d_) {
    throw std::invalid_argument("ToeplitzOperator::apply: length mismatch");
  }
  std::vector<std::complex<double>> work(n_, {0.0, 0.0});
  for (int i = 0; i < d_; ++i) work[i] = v[i];
  fft(work, false);
  for (std::size_t i = 0; i < n_; ++i) work[i] *= spectrum_[i];
  fft(work, true);
  Eigen::VectorXd out(d_);
  for (int i = 0; i < d_; ++i) out[i] = work[i].real();
  return out;
}

Eigen::VectorXd toeplitz_matvec(const Eigen::VectorXd& first_col,
                                const Eigen::VectorXd& v) {
  if (first_col.size() != v.size()) {
    throw std::invalid_argument("toeplitz_matvec: length mismatch");
  }
  return ToeplitzOperator(first_col).apply(v);
}

Eigen::VectorXd toeplitz_matvec_direct(const Eigen::VectorXd& first_col,
                                       const Eigen::VectorXd& v) {
  const int d = static_cast<int>(first_col.size());
  if (v.size() != d) {
    throw std::invalid_argument("toeplitz_matvec_direct: length mismatch");
  }
  Eigen::VectorXd out(d);
  for (int i = 0; i < d; ++i) {
    double s = 0.0;
    for (int j = 0; j < d; ++j) s += first_col[std::abs(i - j)] * v[j];
    out[i] = s;
  }
  return out;
}

EigenResult dense_min_eig(const KernelMatrix& kernel, int dense_cap) {
  if (kernel.d > dense_cap) {
    throw std::invalid_argument(
        "dense_min_eig: d exceeds the dense cap, use lanczos_min_eig");
  }
  const Eigen::MatrixXd m = dense_kernel(kernel);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("dense_min_eig: eigendecomposition failed");
  }
  EigenResult result;
  result.method = EigMethod::Dense;
  result.eigenvalue = solver.eigenvalues()[0];
  result.eigenvector = solver.eigenvectors().col(0);
  result.eigenvector.normalize();
  canonicalize(result.eigenvector);
  result.residual =
      (m * result.eigenvector - result.eigenvalue * result.eigenvector).norm();
  result.iterations = 0;
  return result;
}

EigenResult lanczos_min_eig(const KernelMatrix& kernel, double tol,
                            int max_iter, std::uint64_t seed) {
  if (tol <= 0.0) throw std::invalid_argument("lanczos_min_eig: tol must be > 0");
  if (max_iter < 1) {
    throw std::invalid_argument("lanczos_min_eig: max_iter must be >= 1");
  }
  const int d = kernel.d;
  const ToeplitzOperator op(kernel.first_col);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  Eigen::VectorXd q(d);
  for (int i = 0; i < d; ++i) q[i] = uniform(rng);
  q.normalize();

  std::vector<Eigen::VectorXd> basis{q};
  std::vector<double> alpha, beta;

  auto ritz_result = [&](int m) {
    // Smallest eigenpair of the m x m tridiagonal projection.
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t);
    EigenResult r;
    r.method = EigMethod::Lanczos;
    r.seed = seed;
    r.iterations = m;
    r.eigenvalue = solver.eigenvalues()[0];
    const Eigen::VectorXd s = solver.eigenvectors().col(0);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < m; ++i) v += s[i] * basis[i];
    v.normalize();
    r.eigenvector = v;
    r.residual = (op.apply(v) - r.eigenvalue * v).norm();
    return r;
  };

  for (int m = 1; m <= max_iter; ++m) {
    Eigen::VectorXd w = op.apply(basis[m - 1]);
    alpha.push_back(basis[m - 1].dot(w));
    w -= alpha[m - 1] * basis[m - 1];
    if (m >= 2) w -= beta[m - 2] * basis[m - 2];
    // Full reorthogonalization, two passes.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) w -= b.dot(w) * b;
    }
    const double b = w.norm();
    beta.push_back(b);

    // Cheap residual estimate |beta_m * s_m| from the tridiagonal pair;
    // the exact residual is recomputed before returning.
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t);
    const double est = std::abs(b * solver.eigenvectors()(m - 1, 0));

    const bool exhausted = (b < 1e-13 || m == d);
    if (est <= tol || exhausted) {
      EigenResult r = ritz_result(m);
      if (r.residual <= tol || exhausted) {
        canonicalize(r.eigenvector);
        return r;
      }
    }
    if (m == max_iter || m == d) break;
    basis.push_back(w / b);
  }

  EigenResult best = ritz_result(static_cast<int>(alpha.size()));
  if (best.residual <= tol) {
    canonicalize(best.eigenvector);
    return best;
  }
  throw LanczosError(
      "lanczos_min_eig: no convergence after " +
          std::to_string(alpha.size()) + " iterations, residual " +
          std::to_string(best.residual),
      std::move(best));
}

}  // namespace bell
