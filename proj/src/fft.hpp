#pragma once

#include <complex>
#include <span>

namespace relamp::detail {

/// Unnormalised complex DFT, out[j] = sum_m in[m] exp(-/+ 2 pi i j m / n).
/// Plans are created once per size and shared; execution is thread-safe.
void fft_forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);
void fft_backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

}  // namespace relamp::detail
