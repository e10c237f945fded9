#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "farsight/turbsim/field.hpp"
#include "farsight/turbsim/zernike.hpp"
#include "oracles.hpp"

using namespace farsight::turbsim;

TEST_SUITE("zernike") {

TEST_CASE("noll index table matches the standard ordering") {
    // (j, n, m, is_sin) for the first 15 modes.
    const struct {
        int j, n, m;
        bool is_sin;
    } table[] = {
        {1, 0, 0, false},  {2, 1, 1, false}, {3, 1, 1, true},
        {4, 2, 0, false},  {5, 2, 2, true},  {6, 2, 2, false},
        {7, 3, 1, true},   {8, 3, 1, false}, {9, 3, 3, true},
        {10, 3, 3, false}, {11, 4, 0, false}, {12, 4, 2, false},
        {13, 4, 2, true},  {14, 4, 4, false}, {15, 4, 4, true},
    };
    for (const auto& row : table) {
        const NollIndex idx = noll_index(row.j);
        CHECK(idx.n == row.n);
        CHECK(idx.m == row.m);
        CHECK(idx.is_sin == row.is_sin);
        // The independent enumeration agrees.
        const oracle::Mode mode = oracle::noll_mode(row.j);
        CHECK(mode.n == row.n);
        CHECK(mode.m == row.m);
        CHECK(mode.is_sin == row.is_sin);
    }
}

TEST_CASE("pinned evaluations") {
    CHECK(zernike_eval(1, 0.7, 2.1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(zernike_eval(4, 0.0, 0.0) ==
          doctest::Approx(-std::sqrt(3.0)).epsilon(1e-12));
    CHECK(zernike_eval(2, 0.5, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    // Astigmatism Z6 = sqrt(6) rho^2 cos(2 theta) at rho=1, theta=0.
    CHECK(zernike_eval(6, 1.0, 0.0) ==
          doctest::Approx(std::sqrt(6.0)).epsilon(1e-12));
}

TEST_CASE("orthonormality on a 256^2 disk grid (quick)") {
    const int grid = 256;
    const double cell = 2.0 / grid;
    for (int j = 1; j <= 8; ++j)
        for (int j2 = j; j2 <= 8; ++j2) {
            double inner = 0.0;
            for (int iy = 0; iy < grid; ++iy)
                for (int ix = 0; ix < grid; ++ix) {
                    const double x = -1.0 + (ix + 0.5) * cell;
                    const double y = -1.0 + (iy + 0.5) * cell;
                    const double rho = std::hypot(x, y);
                    if (rho > 1.0) continue;
                    const double theta = std::atan2(y, x);
                    inner += zernike_eval(j, rho, theta) *
                             zernike_eval(j2, rho, theta);
                }
            inner *= cell * cell / 3.14159265358979323846;
            CHECK(std::abs(inner - (j == j2 ? 1.0 : 0.0)) < 0.02);
        }
}

TEST_CASE("covariance: pinned values and selection rules") {
    CHECK(noll_covariance(2, 3, 1.7) == 0.0);       // cos vs sin tilt
    CHECK(noll_covariance(2, 4, 1.0) == 0.0);       // m=1 vs m=0
    CHECK(noll_covariance(5, 6, 1.0) == 0.0);       // sin vs cos astigmatism
    CHECK(noll_covariance(4, 4, 1.0) ==
          doctest::Approx(0.0232).epsilon(0.01));   // Noll's defocus variance
    CHECK(noll_covariance(2, 2, 1.0) ==
          doctest::Approx(0.4487).epsilon(0.01));   // Noll's tilt variance
    CHECK(noll_covariance(2, 2, 2.0) / noll_covariance(2, 2, 1.0) ==
          doctest::Approx(std::pow(2.0, 5.0 / 3.0)).epsilon(1e-12));
    CHECK_THROWS_AS(noll_covariance(1, 4, 1.0), farsight::Error);
    CHECK_THROWS_AS(noll_covariance(4, 0, 1.0), farsight::Error);
}

TEST_CASE("covariance: closed form agrees with the quadrature oracle") {
    for (int j = 2; j <= 15; ++j)
        for (int j2 = j; j2 <= 15; ++j2) {
            const double lib = noll_covariance(j, j2, 1.3);
            const double ora = oracle::noll_covariance(j, j2, 1.3);
            if (ora == 0.0) {
                CHECK(lib == 0.0);
            } else {
                CHECK(lib == doctest::Approx(ora).epsilon(1e-6));
            }
        }
}

TEST_CASE("covariance matrix is symmetric and PSD") {
    const Eigen::MatrixXd cov = modal_covariance(15, 1.0);
    REQUIRE(cov.rows() == 14);  // piston removed
    CHECK((cov - cov.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    CHECK(es.eigenvalues().minCoeff() > -1e-12 * cov.trace());
}

}  // TEST_SUITE
