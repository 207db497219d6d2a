#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace bell {

// In-place radix-2 Cooley-Tukey transform; size must be a power of two.
// The inverse includes the 1/n scaling. Twiddles come from a directly
// evaluated table, so results are deterministic and accurate to a few ulp.
void fft(std::vector<std::complex<double>>& data, bool inverse);

std::size_t next_pow2(std::size_t n);

}  // namespace bell
