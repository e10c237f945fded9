#include "farsight/turbsim/degrade.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "farsight/core/error.hpp"

namespace farsight::turbsim {
namespace {

constexpr double kPi = 3.14159265358979323846;

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

double sample_bilinear(const ImageFrame& img, double x, double y,
                       std::uint32_t c) {
    x = std::min(static_cast<double>(img.width - 1), std::max(0.0, x));
    y = std::min(static_cast<double>(img.height - 1), std::max(0.0, y));
    const int x0 = static_cast<int>(x);
    const int y0 = static_cast<int>(y);
    const int x1 = std::min<int>(x0 + 1, img.width - 1);
    const int y1 = std::min<int>(y0 + 1, img.height - 1);
    const double fx = x - x0;
    const double fy = y - y0;
    const double a = img.at(x0, y0, c) * (1 - fx) + img.at(x1, y0, c) * fx;
    const double b = img.at(x0, y1, c) * (1 - fx) + img.at(x1, y1, c) * fx;
    return a * (1 - fy) + b * fy;
}

struct AnchorBlend {
    int i0, i1, j0, j1;      // anchor grid indices
    double fx, fy;           // bilinear fractions
};

AnchorBlend anchor_blend(const ZernikeField& field, double x, double y) {
    const double gs = field.config.grid_spacing;
    double u = x / gs;
    double v = y / gs;
    u = std::min(static_cast<double>(field.grid_width - 1), std::max(0.0, u));
    v = std::min(static_cast<double>(field.grid_height - 1), std::max(0.0, v));
    AnchorBlend b;
    b.i0 = static_cast<int>(u);
    b.j0 = static_cast<int>(v);
    b.i1 = std::min(b.i0 + 1, field.grid_width - 1);
    b.j1 = std::min(b.j0 + 1, field.grid_height - 1);
    b.fx = u - b.i0;
    b.fy = v - b.j0;
    return b;
}

Psf delta_psf(int size) {
    Psf psf;
    psf.size = size;
    psf.kernel.assign(static_cast<std::size_t>(size) * size, 0.0);
    psf.kernel[static_cast<std::size_t>(size / 2) * size + size / 2] = 1.0;
    return psf;
}

ImageFrame degrade_impl(const ImageFrame& image, const ZernikeField& field,
                        int psf_size, bool parallel) {
    require_valid(image);
    if (psf_size < 1 || psf_size % 2 == 0)
        fail_invalid("degrade: psf_size must be odd");
    const int expect_gw =
        (static_cast<int>(image.width) + field.config.grid_spacing - 1) /
        field.config.grid_spacing;
    const int expect_gh =
        (static_cast<int>(image.height) + field.config.grid_spacing - 1) /
        field.config.grid_spacing;
    if (expect_gw != field.grid_width || expect_gh != field.grid_height)
        fail_invalid("degrade: field was sampled for a different image size");

    const bool all_zero =
        std::all_of(field.coeffs.begin(), field.coeffs.end(),
                    [](double c) { return c == 0.0; });
    if (all_zero) return image;  // zero displacement, delta PSF

    const int w = static_cast<int>(image.width);
    const int h = static_cast<int>(image.height);
    const int ch = static_cast<int>(image.channels);
    const double tilt_scale = tilt_to_pixels(1.0, field.config);

    // Per-anchor PSFs, higher orders only; pure-tilt anchors blur as deltas.
    const int anchors = field.grid_width * field.grid_height;
    std::vector<Psf> psfs(anchors);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int a = 0; a < anchors; ++a) {
        std::span<const double> coeffs(
            field.coeffs.data() + static_cast<std::size_t>(a) * field.num_modes,
            field.num_modes);
        const bool high_zero = std::all_of(
            coeffs.begin() + std::min<std::size_t>(2, coeffs.size()),
            coeffs.end(), [](double c) { return c == 0.0; });
        psfs[a] = high_zero ? delta_psf(psf_size)
                            : psf_from_zernike(coeffs, field.config, psf_size);
    }

    // Stage 1: inverse tilt warp.
    ImageFrame warped = image;
#pragma omp parallel for if (parallel)
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const AnchorBlend b = anchor_blend(field, x, y);
            auto lerp_coeff = [&](int j) {
                const double c00 = field.coeff(b.i0, b.j0, j);
                const double c10 = field.coeff(b.i1, b.j0, j);
                const double c01 = field.coeff(b.i0, b.j1, j);
                const double c11 = field.coeff(b.i1, b.j1, j);
                return (c00 * (1 - b.fx) + c10 * b.fx) * (1 - b.fy) +
                       (c01 * (1 - b.fx) + c11 * b.fx) * b.fy;
            };
            const double dx = lerp_coeff(2) * tilt_scale;
            const double dy = lerp_coeff(3) * tilt_scale;
            for (int c = 0; c < ch; ++c)
                warped.at(x, y, c) = sample_bilinear(image, x - dx, y - dy, c);
        }
    }

    // Stage 2: spatially varying blur, bilinear blend of anchor PSFs.
    ImageFrame out = warped;
    const int half = psf_size / 2;
#pragma omp parallel for if (parallel)
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const AnchorBlend b = anchor_blend(field, x, y);
            const Psf& p00 = psfs[b.j0 * field.grid_width + b.i0];
            const Psf& p10 = psfs[b.j0 * field.grid_width + b.i1];
            const Psf& p01 = psfs[b.j1 * field.grid_width + b.i0];
            const Psf& p11 = psfs[b.j1 * field.grid_width + b.i1];
            const double w00 = (1 - b.fx) * (1 - b.fy);
            const double w10 = b.fx * (1 - b.fy);
            const double w01 = (1 - b.fx) * b.fy;
            const double w11 = b.fx * b.fy;
            for (int c = 0; c < ch; ++c) {
                double acc = 0.0;
                for (int v = 0; v < psf_size; ++v) {
                    const int sy = std::clamp(y + v - half, 0, h - 1);
                    for (int u = 0; u < psf_size; ++u) {
                        const std::size_t k =
                            static_cast<std::size_t>(v) * psf_size + u;
                        const double kw = w00 * p00.kernel[k] + w10 * p10.kernel[k] +
                                          w01 * p01.kernel[k] + w11 * p11.kernel[k];
                        if (kw == 0.0) continue;
                        const int sx = std::clamp(x + u - half, 0, w - 1);
                        acc += kw * warped.at(sx, sy, c);
                    }
                }
                out.at(x, y, c) = clamp01(acc);
            }
        }
    }
    return out;
}

}  // namespace

double tilt_to_pixels(double tilt_coeff, const TurbulenceConfig& config) {
    // Angle 4*a*lambda/(pi*D) expressed in lambda/D units is 4a/pi; the
    // focal-plane scale converts lambda/D to pixels.
    return tilt_coeff * (4.0 / kPi) * config.pixels_per_lod;
}

ImageFrame degrade(const ImageFrame& image, const ZernikeField& field,
                   int psf_size) {
    return degrade_impl(image, field, psf_size, true);
}

ImageFrame degrade_serial(const ImageFrame& image, const ZernikeField& field,
                          int psf_size) {
    return degrade_impl(image, field, psf_size, false);
}

}  // namespace farsight::turbsim
