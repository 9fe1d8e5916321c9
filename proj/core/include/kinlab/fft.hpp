// SPDX-License-Identifier: Apache-2.0
//
// Discrete Fourier transforms for Field, in the continuum-normalized
// convention of grid.hpp. Axis subsets transform independently, so fields
// may be held in mixed representations.

#ifndef KINLAB_FFT_HPP
#define KINLAB_FFT_HPP

#include <initializer_list>
#include <vector>

#include "kinlab/grid.hpp"

namespace kinlab {

// Transform the listed physical axes to spectral representation, in place.
void forward_axes(Field& f, const std::vector<std::size_t>& axes);
// Transform the listed spectral axes back to physical representation.
void inverse_axes(Field& f, const std::vector<std::size_t>& axes);

// Copies in the requested full representation.
Field spectral_copy(const Field& f);
Field physical_copy(const Field& f);

// Raw unnormalized c2c transform of one axis (FFTW semantics, no scaling or
// lattice phase); building block for padded/dealiased products. sign is
// -1 for forward, +1 for backward.
void raw_fft_axis(std::vector<std::complex<double>>& data,
                  const std::vector<std::size_t>& shape, std::size_t axis,
                  int sign);

}  // namespace kinlab

#endif  // KINLAB_FFT_HPP
