#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "bell/quantum.hpp"

namespace bell {

// Ordered partition of the Hilbert-space indices {0..D-1} into d blocks;
// block k feeds outcome k.
using Grouping = std::vector<std::vector<int>>;

enum class GroupingRegime { Contiguous, General };

// Contiguous: compositions of D into d parts (cut points). General: all
// ordered set partitions into d nonempty blocks.
std::vector<Grouping> enumerate_groupings(int D, int d, GroupingRegime regime);

// d-outcome measurement on a dimension-D system: the projector of outcome
// k is the sum of rank-1 projectors over the base columns in block k.
struct DegenerateMeasurement {
  int D = 0;
  int d = 0;
  MeasurementBasis base;  // dimension D
  Grouping grouping;      // d blocks covering {0..D-1}
};

DegenerateMeasurement make_degenerate(const MeasurementBasis& base,
                                      const Grouping& grouping);

// max-norm of (sum of outcome projectors) - identity.
double completeness_residual(const DegenerateMeasurement& m);

// The CGLMP functional is quadratic in the real Schmidt vector of the
// dimension-D state: A(lambda) = lambda^T K lambda. Returns the
// symmetrized K for the four measurements (A1, A2, B1, B2).
Eigen::MatrixXd functional_kernel(const std::array<DegenerateMeasurement, 4>& meas);

enum class DegenerateMode { Exhaustive, Random };

struct DegenerateResult {
  int d = 0;
  int D = 0;
  DegenerateMode mode = DegenerateMode::Exhaustive;
  double min_value = 0.0;
  std::array<Grouping, 4> groupings;  // of the minimizing configuration
  Eigen::VectorXd state;              // optimal Schmidt vector (signed)
  std::uint64_t seed = 0;
  int samples = 0;
};

// Minimum of the functional over degenerate-measurement configurations,
// optimizing the dimension-D Schmidt vector exactly per configuration
// (minimal eigenvalue of K). Exhaustive mode sweeps contiguous groupings
// of two candidate bases per slot: the dimension-D best basis and the
// dimension-d best basis embedded block-diagonally (padded with identity),
// which contains the D = d optimum. Random mode draws seeded Haar-rotated
// bases with random groupings.
DegenerateResult degenerate_min(int d, int D, DegenerateMode mode,
                                int samples = 0, std::uint64_t seed = 42,
                                int threads = 1);

// Seeded Haar-distributed unitary (QR of a complex Gaussian matrix with
// phase-fixed R diagonal).
Eigen::MatrixXcd haar_unitary(int n, std::mt19937_64& rng);

}  // namespace bell
