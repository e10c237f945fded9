#include "farsight/turbsim/field.hpp"

#include <cmath>
#include <random>

#include "farsight/core/error.hpp"
#include "farsight/core/rng.hpp"
#include "farsight/turbsim/zernike.hpp"

namespace farsight::turbsim {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Cholesky with a bounded jitter retry; a failure past the jitter budget
// indicates a covariance bug, not noise.
Eigen::MatrixXd safe_cholesky(const Eigen::MatrixXd& cov, const char* what) {
    Eigen::MatrixXd sym = 0.5 * (cov + cov.transpose());
    const double jitter = 1e-10 * sym.trace() / sym.rows();
    for (int attempt = 0; attempt < 2; ++attempt) {
        Eigen::LLT<Eigen::MatrixXd> llt(sym);
        if (llt.info() == Eigen::Success) return llt.matrixL();
        sym.diagonal().array() += jitter;
    }
    throw Error(ErrorKind::Internal,
                std::string("covariance matrix not PSD: ") + what);
}

}  // namespace

double TurbulenceConfig::effective_d_over_r0() const {
    if (d_over_r0 > 0.0) return d_over_r0;
    const double k = 2.0 * kPi / wavelength;
    const double r0 = std::pow(0.423 * k * k * cn2 * path_length, -3.0 / 5.0);
    return aperture_diameter / r0;
}

void TurbulenceConfig::validate() const {
    if (cn2 <= 0 || path_length <= 0 || wavelength <= 0 || aperture_diameter <= 0)
        fail_invalid("TurbulenceConfig: physical quantities must be positive");
    if (num_zernike < 3)
        fail_invalid("TurbulenceConfig: num_zernike must be >= 3");
    if (grid_spacing < 1) fail_invalid("TurbulenceConfig: grid_spacing < 1");
    if (correlation_length <= 0 || pixels_per_lod <= 0)
        fail_invalid("TurbulenceConfig: scales must be positive");
    if (pupil_grid < 8 || (pupil_grid & (pupil_grid - 1)) != 0)
        fail_invalid("TurbulenceConfig: pupil_grid must be a power of two >= 8");
    if (pad_factor < 1 || (pad_factor & (pad_factor - 1)) != 0)
        fail_invalid("TurbulenceConfig: pad_factor must be a power of two");
    if (psf_size < 1 || psf_size % 2 == 0 || psf_size > pupil_grid * pad_factor)
        fail_invalid("TurbulenceConfig: psf_size must be odd and fit the FFT grid");
    if (effective_d_over_r0() <= 0)
        fail_invalid("TurbulenceConfig: d_over_r0 must be positive");
}

Eigen::MatrixXd modal_covariance(int num_zernike, double d_over_r0) {
    const int m = num_zernike - 1;  // modes 2..J
    Eigen::MatrixXd cov(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) {
            const double v = noll_covariance(a + 2, b + 2, d_over_r0);
            cov(a, b) = v;
            cov(b, a) = v;
        }
    return cov;
}

ZernikeField sample_field(const TurbulenceConfig& config, int image_width,
                          int image_height) {
    config.validate();
    if (image_width < 1 || image_height < 1)
        fail_invalid("sample_field: image dimensions must be >= 1");

    ZernikeField field;
    field.config = config;
    field.grid_width = (image_width + config.grid_spacing - 1) / config.grid_spacing;
    field.grid_height = (image_height + config.grid_spacing - 1) / config.grid_spacing;
    field.num_modes = config.num_zernike - 1;

    const int points = field.grid_width * field.grid_height;
    const int modes = field.num_modes;

    const Eigen::MatrixXd c_modal =
        modal_covariance(config.num_zernike, config.effective_d_over_r0());
    Eigen::MatrixXd c_spatial(points, points);
    for (int p = 0; p < points; ++p) {
        const double px = (p % field.grid_width) * config.grid_spacing;
        const double py = (p / field.grid_width) * config.grid_spacing;
        for (int q = p; q < points; ++q) {
            const double qx = (q % field.grid_width) * config.grid_spacing;
            const double qy = (q / field.grid_width) * config.grid_spacing;
            const double d = std::hypot(px - qx, py - qy);
            const double v = std::exp(-d / config.correlation_length);
            c_spatial(p, q) = v;
            c_spatial(q, p) = v;
        }
    }

    const Eigen::MatrixXd l_modal = safe_cholesky(c_modal, "modal");
    const Eigen::MatrixXd l_spatial = safe_cholesky(c_spatial, "spatial");

    NormalSource normals(config.rng_seed);
    Eigen::MatrixXd z(points, modes);
    for (int p = 0; p < points; ++p)
        for (int j = 0; j < modes; ++j) z(p, j) = normals.next();

    // X = L_s Z L_m^T gives Cov(vec X) = C_spatial (x) C_modal.
    const Eigen::MatrixXd x = l_spatial * z * l_modal.transpose();

    field.coeffs.resize(static_cast<std::size_t>(points) * modes);
    for (int p = 0; p < points; ++p)
        for (int j = 0; j < modes; ++j)
            field.coeffs[static_cast<std::size_t>(p) * modes + j] = x(p, j);
    return field;
}

}  // namespace farsight::turbsim
