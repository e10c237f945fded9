#pragma once

namespace farsight::turbsim {

// Radial degree n and azimuthal frequency m for Noll index j (j >= 1).
// Even j carries the cos(m theta) term, odd j the sin(m theta) term.
struct NollIndex {
    int n;
    int m;        // >= 0
    bool is_sin;  // false for m == 0
};

NollIndex noll_index(int j);

// Noll-normalized Zernike polynomial Z_j(rho, theta); orthonormal over the
// unit disk with inner product (1/pi) * integral.
double zernike_eval(int j, double rho, double theta);

// Covariance E[a_j a_j2] of Kolmogorov-turbulence Zernike coefficients over
// a circular aperture, in rad^2, scaling as (D/r0)^(5/3). Piston (j = 1) is
// excluded. Zero unless the azimuthal orders match and both modes share the
// same trig parity.
double noll_covariance(int j, int j2, double d_over_r0);

}  // namespace farsight::turbsim
