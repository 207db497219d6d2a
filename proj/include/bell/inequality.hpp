#pragma once

#include <array>
#include <cstdint>

#include "bell/quantum.hpp"

namespace bell {

// Deterministic local strategy: one fixed outcome per setting.
// These are the extreme points of the local-realistic polytope, so the
// LR bound only needs to be checked on them.
struct LRStrategy {
  int d = 0;
  std::array<int, 4> outcomes{};  // (a1, a2, b1, b2)
};

// Left-hand side of the inequality:
//   P(A2<B2) + P(B2<A1) + P(A1<B1) + P(B1<=A2)
// where P(Aa<Bb) = sum_{i<j} P(i,j|a,b). Local realism bounds this below
// by 1; quantum states can push it towards 0.
double cglmp_functional(const ProbTable& table);

// Value of the functional at a deterministic strategy; an integer in 1..4.
int lr_value(const LRStrategy& strategy);

struct LRMinResult {
  double value = 0.0;
  LRStrategy strategy;    // lexicographically first minimizer
  std::int64_t searched = 0;  // number of strategies enumerated (d^4)
};

// Exhaustive minimum over all d^4 deterministic strategies.
LRMinResult lr_min(int d, int cap = 20);

}  // namespace bell
