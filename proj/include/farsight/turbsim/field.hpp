#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "farsight/core/error.hpp"

namespace farsight::turbsim {

struct TurbulenceConfig {
    // Physical path parameters; used only to derive d_over_r0 when it is not
    // supplied directly.
    double cn2 = 1e-15;               // m^(-2/3)
    double path_length = 300.0;       // m
    double wavelength = 525e-9;       // m
    double aperture_diameter = 0.1;   // m

    double d_over_r0 = 0.0;           // <= 0 means: derive from the above
    int num_zernike = 15;             // Noll modes 1..J; J >= 3
    int grid_spacing = 32;            // px between coefficient anchors
    std::uint64_t rng_seed = 0;

    double correlation_length = 32.0; // px, inter-anchor kernel exp(-d/L)
    double pixels_per_lod = 1.0;      // focal-plane scale, px per lambda/D
    int pupil_grid = 128;             // pupil samples across the array
    int pad_factor = 4;               // zero-padding before the FFT
    int psf_size = 33;                // odd crop size

    // Effective turbulence strength: supplied d_over_r0, or derived via the
    // plane-wave Fried parameter r0 = (0.423 k^2 Cn2 L)^(-3/5).
    double effective_d_over_r0() const;

    void validate() const;
};

// Per-anchor-point Zernike coefficient vectors a_2..a_J (piston omitted).
struct ZernikeField {
    int grid_width = 0;
    int grid_height = 0;
    int num_modes = 0;  // num_zernike - 1
    // coeffs[(gy * grid_width + gx) * num_modes + (j - 2)]
    std::vector<double> coeffs;
    TurbulenceConfig config;

    double coeff(int gx, int gy, int j) const {
        return coeffs[(static_cast<std::size_t>(gy) * grid_width + gx) *
                          num_modes +
                      (j - 2)];
    }
};

// Modal covariance matrix for Noll modes 2..num_zernike (piston removed),
// symmetric PSD, entries from noll_covariance.
Eigen::MatrixXd modal_covariance(int num_zernike, double d_over_r0);

// Draws the anchor-point coefficient grid for an image of the given size.
// Modal correlation comes from the Noll covariance, spatial correlation from
// an exponential kernel exp(-d / correlation_length); the joint covariance is
// the Kronecker product of the two factors. Deterministic in rng_seed.
ZernikeField sample_field(const TurbulenceConfig& config, int image_width,
                          int image_height);

}  // namespace farsight::turbsim
