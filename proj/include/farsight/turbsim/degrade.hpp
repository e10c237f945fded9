#pragma once

#include "farsight/core/types.hpp"
#include "farsight/turbsim/psf.hpp"

namespace farsight::turbsim {

// Pixel displacement implied by the tilt coefficients a_2 (x) and a_3 (y):
// angle-of-arrival 4a/(pi D) in wavelength units, times the focal-plane
// scale in pixels per lambda/D.
double tilt_to_pixels(double tilt_coeff, const TurbulenceConfig& config);

// Applies the turbulence forward model: geometric tilt warp from the
// bilinearly interpolated (a_2, a_3) anchor grid, then spatially varying blur
// blending the four nearest anchors' PSFs. Output clamped to [0,1]. An
// all-zero field returns the input unchanged.
ImageFrame degrade(const ImageFrame& image, const ZernikeField& field,
                   int psf_size);

// Single-threaded reference implementation; identical arithmetic per pixel,
// kept for correctness tests and the kernel benchmark.
ImageFrame degrade_serial(const ImageFrame& image, const ZernikeField& field,
                          int psf_size);

}  // namespace farsight::turbsim
