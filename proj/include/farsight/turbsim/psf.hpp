#pragma once

#include <complex>
#include <span>
#include <vector>

#include "farsight/turbsim/field.hpp"

namespace farsight::turbsim {

// Nonnegative blur kernel, odd size, entries summing to 1 (within 1e-6).
struct Psf {
    int size = 0;
    std::vector<double> kernel;  // size * size, row-major

    double at(int x, int y) const { return kernel[static_cast<std::size_t>(y) * size + x]; }
    bool is_delta() const;

    // Second central moment (mean of squared radius about the centroid).
    double second_moment() const;
};

// In-place radix-2 FFT over a square grid of complex samples; n power of two.
void fft2_inplace(std::vector<std::complex<double>>& grid, int n, bool inverse);

// Intensity PSF from pupil-plane Zernike coefficients a_2..a_J: phase is
// accumulated over a circular aperture, the pupil is zero-padded and Fourier
// transformed, and the squared magnitude is cropped to psf_size and
// normalized. Tilt modes (j = 2, 3) are skipped; degrade() applies tilt as a
// geometric warp instead.
Psf psf_from_zernike(std::span<const double> coeffs,
                     const TurbulenceConfig& config, int psf_size);

}  // namespace farsight::turbsim
