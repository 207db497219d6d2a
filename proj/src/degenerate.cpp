#include "bell/degenerate.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <thread>

namespace bell {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<int> block_index_map(const Grouping& grouping, int D) {
  std::vector<int> map(D, -1);
  for (std::size_t b = 0; b < grouping.size(); ++b) {
    for (int p : grouping[b]) {
      if (p < 0 || p >= D || map[p] != -1) {
        throw std::invalid_argument("grouping: blocks must partition {0..D-1}");
      }
      map[p] = static_cast<int>(b);
    }
  }
  for (int p = 0; p < D; ++p) {
    if (map[p] == -1) {
      throw std::invalid_argument("grouping: blocks must cover {0..D-1}");
    }
  }
  return map;
}

// Best basis of dimension d embedded in dimension D, padded with the
// computational basis on the remaining D-d directions.
MeasurementBasis embedded_best_basis(int d, int D, Party party, double phase,
                                     int setting) {
  const MeasurementBasis small = best_basis(d, party, phase, setting);
  MeasurementBasis out;
  out.d = D;
  out.party = party;
  out.setting = setting;
  out.vectors = Eigen::MatrixXcd::Identity(D, D);
  out.vectors.topLeftCorner(d, d) = small.vectors;
  return out;
}

struct SlotPhase {
  Party party;
  double phase;
  int setting;
};

constexpr SlotPhase kSlots[4] = {{Party::Alice, 0.0, 1},
                                 {Party::Alice, 0.5, 2},
                                 {Party::Bob, 0.25, 1},
                                 {Party::Bob, -0.25, 2}};

}  // namespace

std::vector<Grouping> enumerate_groupings(int D, int d, GroupingRegime regime) {
  if (d >= D) throw std::invalid_argument("enumerate_groupings: not degenerate");
  if (d < 2 || D > 12) {
    throw std::invalid_argument("enumerate_groupings: requires 2 <= d < D <= 12");
  }
  std::vector<Grouping> out;
  if (regime == GroupingRegime::Contiguous) {
    // Compositions of D into d parts, via cut-point combinations.
    std::vector<int> cuts(d - 1);
    for (int i = 0; i < d - 1; ++i) cuts[i] = i + 1;
    while (true) {
      Grouping g(d);
      int start = 0;
      for (int b = 0; b < d; ++b) {
        const int end = (b == d - 1) ? D : cuts[b];
        for (int p = start; p < end; ++p) g[b].push_back(p);
        start = end;
      }
      out.push_back(std::move(g));
      int i = d - 2;
      while (i >= 0 && cuts[i] == D - (d - 1 - i)) --i;
      if (i < 0) break;
      ++cuts[i];
      for (int j = i + 1; j < d - 1; ++j) cuts[j] = cuts[j - 1] + 1;
    }
  } else {
    // All surjections {0..D-1} -> {0..d-1}.
    std::vector<int> assign(D, 0);
    while (true) {
      Grouping g(d);
      for (int p = 0; p < D; ++p) g[assign[p]].push_back(p);
      if (std::all_of(g.begin(), g.end(),
                      [](const auto& blk) { return !blk.empty(); })) {
        out.push_back(std::move(g));
      }
      int i = D - 1;
      while (i >= 0 && assign[i] == d - 1) assign[i--] = 0;
      if (i < 0) break;
      ++assign[i];
    }
  }
  return out;
}

DegenerateMeasurement make_degenerate(const MeasurementBasis& base,
                                      const Grouping& grouping) {
  DegenerateMeasurement m;
  m.D = base.d;
  m.d = static_cast<int>(grouping.size());
  m.base = base;
  m.grouping = grouping;
  block_index_map(grouping, m.D);  // validates
  return m;
}

double completeness_residual(const DegenerateMeasurement& m) {
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(m.D, m.D);
  for (const auto& block : m.grouping) {
    for (int p : block) {
      sum += m.base.vectors.col(p) * m.base.vectors.col(p).adjoint();
    }
  }
  return (sum - Eigen::MatrixXcd::Identity(m.D, m.D)).cwiseAbs().maxCoeff();
}

Eigen::MatrixXd functional_kernel(
    const std::array<DegenerateMeasurement, 4>& meas) {
  const int D = meas[0].D;
  for (const auto& m : meas) {
    if (m.D != D) {
      throw std::invalid_argument("functional_kernel: dimension mismatch");
    }
  }
  const std::vector<int> blockA[2] = {block_index_map(meas[0].grouping, D),
                                      block_index_map(meas[1].grouping, D)};
  const std::vector<int> blockB[2] = {block_index_map(meas[2].grouping, D),
                                      block_index_map(meas[3].grouping, D)};
  const Eigen::MatrixXcd* baseA[2] = {&meas[0].base.vectors,
                                      &meas[1].base.vectors};
  const Eigen::MatrixXcd* baseB[2] = {&meas[2].base.vectors,
                                      &meas[3].base.vectors};

  struct Term {
    int a, b;
    bool (*pred)(int, int);
  };
  static const Term terms[4] = {
      {1, 1, [](int i, int j) { return i < j; }},   // A2 < B2
      {0, 1, [](int i, int j) { return j < i; }},   // B2 < A1
      {0, 0, [](int i, int j) { return i < j; }},   // A1 < B1
      {1, 0, [](int i, int j) { return j <= i; }},  // B1 <= A2
  };

  Eigen::MatrixXd kernel = Eigen::MatrixXd::Zero(D, D);
  Eigen::VectorXcd u(D);
  for (const Term& term : terms) {
    for (int p = 0; p < D; ++p) {
      for (int q = 0; q < D; ++q) {
        if (!term.pred(blockA[term.a][p], blockB[term.b][q])) continue;
        // Probability contribution |lambda . u|^2 with
        // u_k = conj(v_k w_k) for base columns v (Alice) and w (Bob).
        u = (baseA[term.a]->col(p).array() * baseB[term.b]->col(q).array())
                .conjugate();
        kernel.noalias() += u.real() * u.real().transpose();
        kernel.noalias() += u.imag() * u.imag().transpose();
      }
    }
  }
  return 0.5 * (kernel + kernel.transpose());
}

Eigen::MatrixXcd haar_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = std::complex<double>(re, im);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR();
  for (int i = 0; i < n; ++i) {
    const std::complex<double> rii = r(i, i);
    const double mag = std::abs(rii);
    q.col(i) *= (mag > 0.0) ? rii / mag : std::complex<double>(1.0, 0.0);
  }
  return q;
}

DegenerateResult degenerate_min(int d, int D, DegenerateMode mode, int samples,
                                std::uint64_t seed, int threads) {
  if (d > D) throw std::invalid_argument("degenerate_min: requires d <= D");
  if (d < 2) throw std::invalid_argument("degenerate_min: d must be >= 2");
  threads = std::max(1, threads);

  DegenerateResult result;
  result.d = d;
  result.D = D;
  result.mode = mode;
  result.seed = seed;
  result.min_value = std::numeric_limits<double>::infinity();

  std::array<MeasurementBasis, 4> big = conjectured_bases(D);

  auto evaluate = [&](const std::array<const MeasurementBasis*, 4>& bases,
                      const std::array<const Grouping*, 4>& groupings,
                      Eigen::VectorXd* state_out) {
    std::array<DegenerateMeasurement, 4> meas;
    for (int s = 0; s < 4; ++s) meas[s] = make_degenerate(*bases[s], *groupings[s]);
    const Eigen::MatrixXd kernel = functional_kernel(meas);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(kernel);
    if (state_out != nullptr) *state_out = solver.eigenvectors().col(0);
    return solver.eigenvalues()[0];
  };

  if (mode == DegenerateMode::Exhaustive) {
    if (D > 12) {
      throw std::invalid_argument("degenerate_min: exhaustive mode needs D <= 12");
    }
    if (d == D) {
      // Singleton groupings only; contains the nondegenerate pipeline.
      Grouping singletons(d);
      for (int i = 0; i < d; ++i) singletons[i] = {i};
      std::array<const MeasurementBasis*, 4> bases{&big[0], &big[1], &big[2],
                                                   &big[3]};
      std::array<const Grouping*, 4> groupings{&singletons, &singletons,
                                               &singletons, &singletons};
      result.min_value = evaluate(bases, groupings, &result.state);
      result.groupings = {singletons, singletons, singletons, singletons};
      result.samples = 1;
      return result;
    }

    const std::vector<Grouping> comps =
        enumerate_groupings(D, d, GroupingRegime::Contiguous);
    // Candidate (basis, grouping) pairs per slot: the dimension-D best
    // basis and the embedded dimension-d best basis, each with every
    // contiguous grouping.
    std::array<std::vector<std::pair<const MeasurementBasis*, const Grouping*>>, 4>
        candidates;
    std::array<MeasurementBasis, 4> small;
    for (int s = 0; s < 4; ++s) {
      small[s] = embedded_best_basis(d, D, kSlots[s].party, kSlots[s].phase,
                                     kSlots[s].setting);
      for (const MeasurementBasis* base : {&big[s], &small[s]}) {
        for (const Grouping& g : comps) candidates[s].emplace_back(base, &g);
      }
    }
    const std::size_t per_slot = candidates[0].size();
    const std::size_t total = per_slot * per_slot * per_slot * per_slot;
    if (total > 5'000'000) {
      throw std::invalid_argument("degenerate_min: exhaustive space too large");
    }

    struct Best {
      double value = std::numeric_limits<double>::infinity();
      std::size_t index = 0;
      Eigen::VectorXd state;
    };
    std::vector<Best> bests(threads);
    auto worker = [&](int t) {
      for (std::size_t idx = t; idx < total; idx += threads) {
        std::size_t rem = idx;
        std::array<std::size_t, 4> sel;
        for (int s = 3; s >= 0; --s) {
          sel[s] = rem % per_slot;
          rem /= per_slot;
        }
        std::array<const MeasurementBasis*, 4> bases;
        std::array<const Grouping*, 4> groupings;
        for (int s = 0; s < 4; ++s) {
          bases[s] = candidates[s][sel[s]].first;
          groupings[s] = candidates[s][sel[s]].second;
        }
        Eigen::VectorXd state;
        const double v = evaluate(bases, groupings, &state);
        Best& best = bests[t];
        if (v < best.value || (v == best.value && idx < best.index)) {
          best = {v, idx, std::move(state)};
        }
      }
    };
    if (threads == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
      for (auto& th : pool) th.join();
    }
    Best winner;
    for (const Best& b : bests) {
      if (b.value < winner.value ||
          (b.value == winner.value && b.index < winner.index)) {
        winner = b;
      }
    }
    result.min_value = winner.value;
    result.state = winner.state;
    result.samples = static_cast<int>(total);
    std::size_t rem = winner.index;
    std::array<std::size_t, 4> sel;
    for (int s = 3; s >= 0; --s) {
      sel[s] = rem % per_slot;
      rem /= per_slot;
    }
    for (int s = 0; s < 4; ++s) {
      result.groupings[s] = *candidates[s][sel[s]].second;
    }
    return result;
  }

  // Random mode: seeded Haar rotation of the best bases plus a uniformly
  // random surjective grouping, independently per slot and sample.
  if (samples < 1) {
    throw std::invalid_argument("degenerate_min: random mode needs samples >= 1");
  }
  if (d >= D) {
    throw std::invalid_argument("degenerate_min: random mode needs d < D");
  }
  result.samples = samples;

  auto run_sample = [&](int s, Eigen::VectorXd* state,
                        std::array<Grouping, 4>* groupings) {
    std::mt19937_64 rng(splitmix64(seed ^ (0x51ed2701ULL + s)));
    std::uniform_int_distribution<int> block(0, d - 1);
    std::array<MeasurementBasis, 4> bases;
    std::array<Grouping, 4> groups;
    for (int slot = 0; slot < 4; ++slot) {
      bases[slot] = big[slot];
      bases[slot].vectors = haar_unitary(D, rng) * big[slot].vectors;
      Grouping g;
      do {
        g.assign(d, {});
        for (int p = 0; p < D; ++p) g[block(rng)].push_back(p);
      } while (std::any_of(g.begin(), g.end(),
                           [](const auto& blk) { return blk.empty(); }));
      groups[slot] = std::move(g);
    }
    std::array<const MeasurementBasis*, 4> bp{&bases[0], &bases[1], &bases[2],
                                              &bases[3]};
    std::array<const Grouping*, 4> gp{&groups[0], &groups[1], &groups[2],
                                      &groups[3]};
    const double v = evaluate(bp, gp, state);
    if (groupings != nullptr) *groupings = std::move(groups);
    return v;
  };

  struct Best {
    double value = std::numeric_limits<double>::infinity();
    int index = -1;
  };
  std::vector<Best> bests(threads);
  auto worker = [&](int t) {
    for (int s = t; s < samples; s += threads) {
      const double v = run_sample(s, nullptr, nullptr);
      Best& best = bests[t];
      if (v < best.value || (v == best.value && s < best.index)) best = {v, s};
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  Best winner;
  for (const Best& b : bests) {
    if (b.value < winner.value ||
        (b.value == winner.value && b.index < winner.index)) {
      winner = b;
    }
  }
  // Re-run the winning sample to recover its state and groupings.
  result.min_value = run_sample(winner.index, &result.state, &result.groupings);
  return result;
}

}  // namespace bell
