#pragma once

#include <complex>
#include <vector>

namespace strichartz {

enum class FftDirection { Forward, Backward };

/// In-place unnormalized DFT of a row-major complex array of the given shape
/// along the listed axes (all axes when `axes` is empty). Plans are created
/// once per (shape, axes, direction) and shared; execution is thread-safe.
void fft_inplace(std::complex<double>* data, const std::vector<int>& shape,
                 const std::vector<int>& axes, FftDirection direction);

}  // namespace strichartz
