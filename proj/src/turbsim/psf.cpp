#include "farsight/turbsim/psf.hpp"

#include <cmath>

#include "farsight/core/error.hpp"
#include "farsight/turbsim/zernike.hpp"

namespace farsight::turbsim {
namespace {

constexpr double kPi = 3.14159265358979323846;

void fft1(std::complex<double>* a, int n, int stride, bool inverse) {
    // Iterative radix-2 Cooley-Tukey with bit-reversal permutation.
    for (int i = 1, rev = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; rev & bit; bit >>= 1) rev ^= bit;
        rev ^= bit;
        if (i < rev) std::swap(a[i * stride], a[rev * stride]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * kPi / len;
        const std::complex<double> w_len(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            std::complex<double> w(1.0);
            for (int k = 0; k < len / 2; ++k) {
                const auto u = a[(i + k) * stride];
                const auto v = a[(i + k + len / 2) * stride] * w;
                a[(i + k) * stride] = u + v;
                a[(i + k + len / 2) * stride] = u - v;
                w *= w_len;
            }
        }
    }
}

}  // namespace

void fft2_inplace(std::vector<std::complex<double>>& grid, int n, bool inverse) {
    if (static_cast<int>(grid.size()) != n * n || (n & (n - 1)) != 0)
        fail_invalid("fft2: grid must be n*n with n a power of two");
    for (int y = 0; y < n; ++y) fft1(grid.data() + static_cast<std::size_t>(y) * n, n, 1, inverse);
    for (int x = 0; x < n; ++x) fft1(grid.data() + x, n, n, inverse);
    if (inverse) {
        const double scale = 1.0 / (static_cast<double>(n) * n);
        for (auto& v : grid) v *= scale;
    }
}

bool Psf::is_delta() const {
    const int c = size / 2;
    return std::abs(at(c, c) - 1.0) < 1e-15;
}

double Psf::second_moment() const {
    double cx = 0.0, cy = 0.0;
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            cx += x * at(x, y);
            cy += y * at(x, y);
        }
    double m2 = 0.0;
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x)
            m2 += ((x - cx) * (x - cx) + (y - cy) * (y - cy)) * at(x, y);
    return m2;
}

Psf psf_from_zernike(std::span<const double> coeffs,
                     const TurbulenceConfig& config, int psf_size) {
    if (psf_size < 1 || psf_size % 2 == 0)
        fail_invalid("psf_from_zernike: psf_size must be odd");
    for (double c : coeffs)
        if (!std::isfinite(c)) fail_invalid("psf_from_zernike: non-finite coefficient");

    const int p = config.pupil_grid;
    const int n = p * config.pad_factor;
    if (psf_size > n) fail_invalid("psf_from_zernike: psf_size exceeds FFT grid");

    std::vector<std::complex<double>> pupil(static_cast<std::size_t>(n) * n,
                                            {0.0, 0.0});
    const double half = (p - 1) / 2.0;
    for (int y = 0; y < p; ++y) {
        for (int x = 0; x < p; ++x) {
            const double ux = (x - half) / half;
            const double uy = (y - half) / half;
            const double rho = std::hypot(ux, uy);
            if (rho > 1.0) continue;
            const double theta = std::atan2(uy, ux);
            double phase = 0.0;
            for (std::size_t i = 0; i < coeffs.size(); ++i) {
                const int j = static_cast<int>(i) + 2;  // coeffs[0] is a_2
                if (j == 2 || j == 3) continue;          // tilt handled by warp
                if (coeffs[i] != 0.0)
                    phase += coeffs[i] * zernike_eval(j, rho, theta);
            }
            pupil[static_cast<std::size_t>(y) * n + x] =
                std::polar(1.0, phase);
        }
    }

    fft2_inplace(pupil, n, false);

    // Centered intensity: DC sits at (0,0); crop around it with wraparound,
    // which is the fftshift restricted to the output window.
    Psf psf;
    psf.size = psf_size;
    psf.kernel.assign(static_cast<std::size_t>(psf_size) * psf_size, 0.0);
    const int h = psf_size / 2;
    double sum = 0.0;
    for (int y = 0; y < psf_size; ++y) {
        const int fy = ((y - h) % n + n) % n;
        for (int x = 0; x < psf_size; ++x) {
            const int fx = ((x - h) % n + n) % n;
            const double v = std::norm(pupil[static_cast<std::size_t>(fy) * n + fx]);
            psf.kernel[static_cast<std::size_t>(y) * psf_size + x] = v;
            sum += v;
        }
    }
    if (sum <= 0.0)
        throw Error(ErrorKind::Internal, "psf_from_zernike: empty PSF");
    for (double& v : psf.kernel) v /= sum;
    return psf;
}

}  // namespace farsight::turbsim
