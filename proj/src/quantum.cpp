#include "bell/quantum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bell {

namespace {

constexpr double kOrthoTol = 1e-10;
constexpr double kSliceSumTol = 1e-10;
constexpr double kNegClampTol = 1e-12;

}  // namespace

SchmidtState make_schmidt_state(const Eigen::VectorXd& coeffs) {
  if (coeffs.size() < 2) {
    throw std::invalid_argument("make_schmidt_state: dimension too small");
  }
  const double norm = coeffs.norm();
  if (norm == 0.0) {
    throw std::invalid_argument("make_schmidt_state: degenerate state");
  }
  SchmidtState state;
  state.d = static_cast<int>(coeffs.size());
  state.coeffs = coeffs / norm;
  return state;
}

double entanglement_entropy(const SchmidtState& state) {
  double e = 0.0;
  for (int i = 0; i < state.d; ++i) {
    const double p = state.coeffs[i] * state.coeffs[i];
    if (p > 0.0) e -= p * std::log2(p);
  }
  return e;
}

double entropy_normalized(const SchmidtState& state) {
  return entanglement_entropy(state) / std::log2(static_cast<double>(state.d));
}

double orthonormality_residual(const MeasurementBasis& basis) {
  const Eigen::MatrixXcd gram =
      basis.vectors.adjoint() * basis.vectors -
      Eigen::MatrixXcd::Identity(basis.d, basis.d);
  return gram.cwiseAbs().maxCoeff();
}

MeasurementBasis best_basis(int d, Party party, double phase, int setting) {
  if (d < 1) throw std::invalid_argument("best_basis: d must be >= 1");
  MeasurementBasis basis;
  basis.d = d;
  basis.party = party;
  basis.setting = setting;
  basis.vectors.resize(d, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  const double w = 2.0 * std::numbers::pi / d;
  for (int col = 0; col < d; ++col) {
    const double outcome =
        (party == Party::Alice) ? (col + phase) : (-col + phase);
    for (int row = 0; row < d; ++row) {
      basis.vectors(row, col) = std::polar(scale, w * row * outcome);
    }
  }
  return basis;
}

std::array<MeasurementBasis, 4> conjectured_bases(int d) {
  return {best_basis(d, Party::Alice, 0.0, 1),
          best_basis(d, Party::Alice, 0.5, 2),
          best_basis(d, Party::Bob, 0.25, 1),
          best_basis(d, Party::Bob, -0.25, 2)};
}

ProbTable joint_prob_table(const SchmidtState& state,
                           const MeasurementBasis& a1,
                           const MeasurementBasis& a2,
                           const MeasurementBasis& b1,
                           const MeasurementBasis& b2) {
  const int d = state.d;
  const MeasurementBasis* alice[2] = {&a1, &a2};
  const MeasurementBasis* bob[2] = {&b1, &b2};
  for (const MeasurementBasis* m : {&a1, &a2, &b1, &b2}) {
    if (m->d != d) {
      throw std::invalid_argument("joint_prob_table: dimension mismatch");
    }
    if (orthonormality_residual(*m) > kOrthoTol) {
      throw std::invalid_argument("joint_prob_table: basis not orthonormal");
    }
  }

  ProbTable table;
  table.d = d;
  const Eigen::MatrixXcd weighted_bob[2] = {
      state.coeffs.asDiagonal() * bob[0]->vectors.conjugate(),
      state.coeffs.asDiagonal() * bob[1]->vectors.conjugate()};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      // amp(i,j) = sum_k lambda_k conj(A(k,i)) conj(B(k,j))
      const Eigen::MatrixXcd amp = alice[a]->vectors.adjoint() * weighted_bob[b];
      Eigen::MatrixXd p = amp.cwiseAbs2();
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          if (p(i, j) < 0.0) {
            if (p(i, j) < -kNegClampTol) {
              throw std::runtime_error("joint_prob_table: negative probability");
            }
            p(i, j) = 0.0;
          }
        }
      }
      const double total = p.sum();
      if (std::abs(total - 1.0) > kSliceSumTol) {
        throw std::runtime_error(
            "joint_prob_table: slice sum deviates from 1 by " +
            std::to_string(total - 1.0));
      }
      table.slices[a * 2 + b] = std::move(p);
    }
  }
  return table;
}

ProbTable joint_prob_table(const SchmidtState& state,
                           const std::array<MeasurementBasis, 4>& bases) {
  return joint_prob_table(state, bases[0], bases[1], bases[2], bases[3]);
}

}  // namespace bell
