#include "bell/variational.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "bell/eigensolver.hpp"
#include "bell/inequality.hpp"
#include "bell/kernel.hpp"

namespace bell {

Eigen::VectorXd schmidt_from_angles(const Eigen::VectorXd& angles) {
  const int d = static_cast<int>(angles.size()) + 1;
  Eigen::VectorXd lambda(d);
  double prefix = 1.0;
  for (int k = 0; k < d - 1; ++k) {
    lambda[k] = prefix * std::cos(angles[k]);
    prefix *= std::sin(angles[k]);
  }
  lambda[d - 1] = prefix;
  return lambda;
}

Eigen::VectorXd angles_from_schmidt(const Eigen::VectorXd& lambda) {
  const int d = static_cast<int>(lambda.size());
  Eigen::VectorXd angles(d - 1);
  for (int k = 0; k < d - 1; ++k) {
    const double tail = lambda.tail(d - 1 - k).norm();
    angles[k] = std::atan2(tail, lambda[k]);
  }
  return angles;
}

Eigen::MatrixXcd unitary_from_params(const Eigen::MatrixXcd& base,
                                     const Eigen::VectorXd& params) {
  const int d = static_cast<int>(base.rows());
  if (params.size() != static_cast<Eigen::Index>(d) * d) {
    throw std::invalid_argument("unitary_from_params: expected d^2 parameters");
  }
  Eigen::MatrixXcd h(d, d);
  int idx = 0;
  for (int i = 0; i < d; ++i) h(i, i) = params[idx++];
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const std::complex<double> z(params[idx], params[idx + 1]);
      idx += 2;
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd phases(d);
  for (int i = 0; i < d; ++i) {
    phases[i] = std::polar(1.0, es.eigenvalues()[i]);
  }
  return base * (es.eigenvectors() * phases.asDiagonal() *
                 es.eigenvectors().adjoint());
}

namespace {

struct Objective {
  int d;
  std::array<MeasurementBasis, 4> conj;
  long evals = 0;

  int n_params() const { return (d - 1) + 4 * d * d; }

  std::array<MeasurementBasis, 4> bases_at(const Eigen::VectorXd& x) const {
    std::array<MeasurementBasis, 4> bases = conj;
    const int block = d * d;
    for (int m = 0; m < 4; ++m) {
      bases[m].vectors = unitary_from_params(
          conj[m].vectors, x.segment((d - 1) + m * block, block));
    }
    return bases;
  }

  SchmidtState state_at(const Eigen::VectorXd& x) const {
    SchmidtState s;
    s.d = d;
    s.coeffs = schmidt_from_angles(x.head(d - 1));
    return s;
  }

  double operator()(const Eigen::VectorXd& x) {
    ++evals;
    return cglmp_functional(joint_prob_table(state_at(x), bases_at(x)));
  }
};

struct LocalResult {
  Eigen::VectorXd x;
  double value;
  bool converged;
};

void record(std::vector<std::pair<int, double>>* trace, long evals, double v) {
  if (trace != nullptr) trace->emplace_back(static_cast<int>(evals), v);
}

LocalResult nelder_mead(Objective& f, const Eigen::VectorXd& x0, double step,
                        double tol, long budget,
                        std::vector<std::pair<int, double>>* trace) {
  const int n = static_cast<int>(x0.size());
  std::vector<Eigen::VectorXd> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  for (int i = 1; i <= n; ++i) pts[i][i - 1] += step;
  for (int i = 0; i <= n; ++i) vals[i] = f(pts[i]);

  std::vector<int> order(n + 1);
  bool converged = false;
  while (f.evals < budget) {
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return vals[a] < vals[b]; });
    const int lo = order[0], hi = order[n], second = order[n - 1];
    if (vals[hi] - vals[lo] < tol) {
      converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i <= n; ++i) {
      if (i != hi) centroid += pts[i];
    }
    centroid /= n;

    const Eigen::VectorXd reflected = centroid + (centroid - pts[hi]);
    const double fr = f(reflected);
    if (fr < vals[lo]) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - pts[hi]);
      const double fe = f(expanded);
      if (fe < fr) {
        pts[hi] = expanded;
        vals[hi] = fe;
      } else {
        pts[hi] = reflected;
        vals[hi] = fr;
      }
      record(trace, f.evals, std::min(fe, fr));
    } else if (fr < vals[second]) {
      pts[hi] = reflected;
      vals[hi] = fr;
    } else {
      const Eigen::VectorXd contracted = centroid + 0.5 * (pts[hi] - centroid);
      const double fc = f(contracted);
      if (fc < vals[hi]) {
        pts[hi] = contracted;
        vals[hi] = fc;
      } else {
        // Shrink towards the best vertex.
        for (int i = 0; i <= n; ++i) {
          if (i == lo) continue;
          pts[i] = pts[lo] + 0.5 * (pts[i] - pts[lo]);
          vals[i] = f(pts[i]);
        }
      }
    }
  }

  int lo = 0;
  for (int i = 1; i <= n; ++i) {
    if (vals[i] < vals[lo]) lo = i;
  }
  return {pts[lo], vals[lo], converged};
}

// Coordinate-wise quadratic line search: fit a parabola through
// f(x-h), f(x), f(x+h) and step to its vertex when it is a minimum.
LocalResult quadratic_polish(Objective& f, const Eigen::VectorXd& start,
                             double tol, long budget,
                             std::vector<std::pair<int, double>>* trace) {
  Eigen::VectorXd x = start;
  double fx = f(x);
  double h = 1e-3;
  const int n = static_cast<int>(x.size());
  while (h > 1e-9 && f.evals < budget) {
    double sweep_gain = 0.0;
    for (int i = 0; i < n && f.evals < budget; ++i) {
      Eigen::VectorXd xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      const double fp = f(xp), fm = f(xm);
      const double curvature = fp - 2.0 * fx + fm;
      double offset;
      if (curvature > 1e-18) {
        offset = 0.5 * h * (fm - fp) / curvature;
        offset = std::clamp(offset, -10.0 * h, 10.0 * h);
      } else {
        offset = (fp < fm) ? h : -h;
      }
      Eigen::VectorXd xn = x;
      xn[i] += offset;
      const double fn = f(xn);
      double best = fx;
      if (fn < best) {
        x = xn;
        best = fn;
      }
      if (fp < best) {
        x = xp;
        best = fp;
      }
      if (fm < best) {
        x = xm;
        best = fm;
      }
      sweep_gain += fx - best;
      fx = best;
    }
    record(trace, f.evals, fx);
    if (sweep_gain < 0.01 * tol) h *= 0.25;
  }
  return {x, fx, true};
}

}  // namespace

OptimizationResult optimize_full(int d, const VariationalOptions& options) {
  if (d < 2 || d > 8) {
    throw std::invalid_argument("optimize_full: d must be in [2, 8]");
  }
  if (options.restarts < 1) {
    throw std::invalid_argument("optimize_full: restarts must be >= 1");
  }

  Objective objective{d, conjectured_bases(d)};
  const int n = objective.n_params();

  OptimizationResult result;
  result.d = d;
  result.value = std::numeric_limits<double>::infinity();
  result.restarts_used = options.restarts;

  const EigenResult kernel_opt = dense_min_eig(kernel_matrix(d));

  for (int r = 0; r < options.restarts; ++r) {
    const std::uint64_t restart_seed = options.seed + static_cast<std::uint64_t>(r);
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(n);
    double step = 0.25;
    if (r == 0) {
      // Conjectured optimum: kernel eigenvector, measurement deltas zero.
      x0.head(d - 1) = angles_from_schmidt(kernel_opt.eigenvector);
      step = 0.02;
    } else {
      std::mt19937_64 rng(restart_seed);
      std::uniform_real_distribution<double> angle(0.0, std::numbers::pi / 2.0);
      std::uniform_real_distribution<double> herm(-0.5, 0.5);
      for (int i = 0; i < d - 1; ++i) x0[i] = angle(rng);
      for (int i = d - 1; i < n; ++i) x0[i] = herm(rng);
    }

    objective.evals = 0;
    std::vector<std::pair<int, double>>* trace =
        (options.keep_trace && r == 0) ? &result.trace : nullptr;
    LocalResult local = nelder_mead(objective, x0, step, options.tol,
                                    options.max_iter * 3 / 4, trace);
    LocalResult polished = quadratic_polish(objective, local.x, options.tol,
                                            options.max_iter, trace);
    if (polished.value < local.value) local = polished;

    if (local.value < result.value) {
      result.value = local.value;
      result.state = objective.state_at(local.x);
      result.bases = objective.bases_at(local.x);
      result.best_restart_seed = restart_seed;
      result.converged = local.converged;
    }
  }

  // Recompute through the pipeline so the reported value is exactly
  // self-consistent with the reported state and bases.
  result.value = cglmp_functional(joint_prob_table(result.state, result.bases));
  return result;
}

double measurement_gauge_distance(const std::array<MeasurementBasis, 4>& found,
                                  const SchmidtState& state) {
  const int d = state.d;
  for (const auto& m : found) {
    if (m.d != d) {
      throw std::invalid_argument("measurement_gauge_distance: dimension mismatch");
    }
  }
  const ProbTable table_found = joint_prob_table(state, found);
  const ProbTable table_conj =
      joint_prob_table(state, conjectured_bases(d));

  double diff_id = 0.0, diff_rev = 0.0;
  for (int s = 0; s < 4; ++s) {
    const Eigen::MatrixXd& pf = table_found.slices[s];
    const Eigen::MatrixXd& pc = table_conj.slices[s];
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        diff_id = std::max(diff_id, std::abs(pf(i, j) - pc(i, j)));
        diff_rev = std::max(
            diff_rev, std::abs(pf(d - 1 - i, d - 1 - j) - pc(i, j)));
      }
    }
  }
  return std::min(diff_id, diff_rev);
}

}  // namespace bell
