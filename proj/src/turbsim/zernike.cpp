#include "farsight/turbsim/zernike.hpp"

#include <cmath>

#include "farsight/core/error.hpp"

namespace farsight::turbsim {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Radial polynomial R_n^m(rho).
double radial(int n, int m, double rho) {
    double sum = 0.0;
    for (int s = 0; s <= (n - m) / 2; ++s) {
        const double num = (s % 2 == 0 ? 1.0 : -1.0) *
                           std::exp(std::lgamma(n - s + 1.0) -
                                    std::lgamma(s + 1.0) -
                                    std::lgamma((n + m) / 2.0 - s + 1.0) -
                                    std::lgamma((n - m) / 2.0 - s + 1.0));
        sum += num * std::pow(rho, n - 2 * s);
    }
    return sum;
}

// Kolmogorov spectrum constant: the 0.0229 in Phi(kappa) = 0.0229 r0^(-5/3)
// kappa^(-11/3) with kappa in cycles per meter.
double kolmogorov_constant() {
    const double a = std::pow(24.0 / 5.0 * std::tgamma(6.0 / 5.0), 5.0 / 6.0);
    const double g = std::tgamma(11.0 / 6.0);
    return a * g * g / (2.0 * std::pow(kPi, 11.0 / 3.0));
}

}  // namespace

NollIndex noll_index(int j) {
    if (j < 1) fail_invalid("Noll index must be >= 1");
    int n = 0;
    while ((n + 1) * (n + 2) / 2 < j) ++n;
    const int pos = j - n * (n + 1) / 2;  // 1-based within radial order n
    // Azimuthal orders within order n: n, n-2, ..., down to 0 or 1, each
    // nonzero m appearing twice (cos for even j, sin for odd j).
    int m;
    if (n % 2 == 0)
        m = 2 * ((pos) / 2);
    else
        m = 2 * ((pos - 1) / 2) + 1;
    const bool is_sin = (m != 0) && (j % 2 == 1);
    return {n, m, is_sin};
}

double zernike_eval(int j, double rho, double theta) {
    if (j < 1) fail_invalid("zernike_eval: index < 1");
    if (!(rho >= 0.0 && rho <= 1.0))
        fail_invalid("zernike_eval: rho outside [0,1]");
    const NollIndex idx = noll_index(j);
    const double r = radial(idx.n, idx.m, rho);
    if (idx.m == 0) return std::sqrt(idx.n + 1.0) * r;
    const double norm = std::sqrt(2.0 * (idx.n + 1.0));
    return norm * r *
           (idx.is_sin ? std::sin(idx.m * theta) : std::cos(idx.m * theta));
}

double noll_covariance(int j, int j2, double d_over_r0) {
    if (j < 2 || j2 < 2) fail_invalid("noll_covariance: piston excluded, j >= 2");
    const NollIndex a = noll_index(j);
    const NollIndex b = noll_index(j2);
    if (a.m != b.m) return 0.0;
    if (a.m != 0 && a.is_sin != b.is_sin) return 0.0;

    // Closed form of A * (D/r0)^(5/3) * sqrt((n+1)(n'+1)) * (-1)^((n+n'-2m)/2)
    // * Integral_0^inf J_{n+1}(x) J_{n'+1}(x) x^(-14/3) dx, with the Bessel
    // integral reduced to gamma functions and A = 8 pi^(8/3) * c_kolmogorov.
    const int n = a.n, n2 = b.n;
    const double prefac = 8.0 * std::pow(kPi, 8.0 / 3.0) * kolmogorov_constant();
    const double sign = ((n + n2 - 2 * a.m) / 2) % 2 == 0 ? 1.0 : -1.0;
    const double log_gammas =
        std::lgamma(14.0 / 3.0) + std::lgamma((n + n2 - 5.0 / 3.0) / 2.0) -
        std::lgamma((n - n2 + 17.0 / 3.0) / 2.0) -
        std::lgamma((n2 - n + 17.0 / 3.0) / 2.0) -
        std::lgamma((n + n2 + 23.0 / 3.0) / 2.0) -
        (14.0 / 3.0) * std::log(2.0);
    return prefac * sign * std::sqrt((n + 1.0) * (n2 + 1.0)) *
           std::exp(log_gammas) * std::pow(d_over_r0, 5.0 / 3.0);
}

}  // namespace farsight::turbsim
