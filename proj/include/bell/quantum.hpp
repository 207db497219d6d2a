#pragma once

#include <array>
#include <Eigen/Dense>

namespace bell {

enum class Party { Alice, Bob };

// Bipartite pure state |psi> = sum_i lambda_i |ii> given by its real
// Schmidt coefficients. Signed entries are allowed (eigensolvers may
// return either sign); the canonical states used in practice are
// entrywise nonnegative.
struct SchmidtState {
  int d = 0;
  Eigen::VectorXd coeffs;
};

// Normalizes and validates a coefficient vector.
SchmidtState make_schmidt_state(const Eigen::VectorXd& coeffs);

// Von Neumann entropy of either reduced state, in bits:
// E = -sum_i lambda_i^2 log2(lambda_i^2), with 0 log 0 := 0.
double entanglement_entropy(const SchmidtState& state);

// E / log2(d); equals 1 exactly for the maximally entangled state.
double entropy_normalized(const SchmidtState& state);

// One nondegenerate projective measurement: column k of `vectors` is the
// eigenvector for outcome k.
struct MeasurementBasis {
  int d = 0;
  Party party = Party::Alice;
  int setting = 0;  // 1 or 2; 0 when unlabeled
  Eigen::MatrixXcd vectors;
};

// max-norm of U^dagger U - I.
double orthonormality_residual(const MeasurementBasis& basis);

// Conjectured optimal measurement basis. For Alice, column i has entries
// exp(i 2pi k (i+phase)/d)/sqrt(d) over rows k; for Bob, column j has
// entries exp(i 2pi l (-j+phase)/d)/sqrt(d) over rows l.
MeasurementBasis best_basis(int d, Party party, double phase, int setting = 0);

// The four conjectured bases A1, A2, B1, B2 with phases
// alpha1=0, alpha2=1/2, beta1=1/4, beta2=-1/4.
std::array<MeasurementBasis, 4> conjectured_bases(int d);

// Joint outcome distribution P(i,j|a,b), settings a,b in {1,2}.
struct ProbTable {
  int d = 0;
  std::array<Eigen::MatrixXd, 4> slices;  // slice index (a-1)*2 + (b-1)

  double operator()(int a, int b, int i, int j) const {
    return slices[(a - 1) * 2 + (b - 1)](i, j);
  }
  const Eigen::MatrixXd& slice(int a, int b) const {
    return slices[(a - 1) * 2 + (b - 1)];
  }
};

// P(i,j|a,b) = |sum_k lambda_k conj(v_k) conj(w_k)|^2 where v, w are the
// outcome-i / outcome-j eigenvector columns. Validates dimensions and
// orthonormality; every (a,b) slice must sum to 1 within 1e-10.
ProbTable joint_prob_table(const SchmidtState& state,
                           const MeasurementBasis& a1,
                           const MeasurementBasis& a2,
                           const MeasurementBasis& b1,
                           const MeasurementBasis& b2);

ProbTable joint_prob_table(const SchmidtState& state,
                           const std::array<MeasurementBasis, 4>& bases);

}  // namespace bell
