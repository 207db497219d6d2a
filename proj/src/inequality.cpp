#include "bell/inequality.hpp"

#include <stdexcept>

namespace bell {

double cglmp_functional(const ProbTable& table) {
  const int d = table.d;
  if (d < 1) throw std::invalid_argument("cglmp_functional: invalid table");
  double value = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i < j) value += table(2, 2, i, j);   // A2 < B2
      if (j < i) value += table(1, 2, i, j);   // B2 < A1
      if (i < j) value += table(1, 1, i, j);   // A1 < B1
      if (j <= i) value += table(2, 1, i, j);  // B1 <= A2
    }
  }
  return value;
}

int lr_value(const LRStrategy& s) {
  const int a1 = s.outcomes[0], a2 = s.outcomes[1];
  const int b1 = s.outcomes[2], b2 = s.outcomes[3];
  for (int o : s.outcomes) {
    if (o < 0 || o >= s.d) {
      throw std::invalid_argument("lr_value: outcome out of range");
    }
  }
  return (a2 < b2 ? 1 : 0) + (b2 < a1 ? 1 : 0) + (a1 < b1 ? 1 : 0) +
         (b1 <= a2 ? 1 : 0);
}

LRMinResult lr_min(int d, int cap) {
  if (d < 2) throw std::invalid_argument("lr_min: d must be >= 2");
  if (d > cap) {
    throw std::invalid_argument(
        "lr_min: d exceeds enumeration cap; raise the cap to override");
  }
  LRMinResult result;
  result.value = 5.0;  // above the maximum of 4
  for (int a1 = 0; a1 < d; ++a1) {
    for (int a2 = 0; a2 < d; ++a2) {
      for (int b1 = 0; b1 < d; ++b1) {
        for (int b2 = 0; b2 < d; ++b2) {
          LRStrategy s{d, {a1, a2, b1, b2}};
          const int v = lr_value(s);
          ++result.searched;
          if (v < result.value) {
            result.value = v;
            result.strategy = s;
          }
        }
      }
    }
  }
  return result;
}

}  // namespace bell
