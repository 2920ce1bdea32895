#include "quermass/zonal.hpp"

#include "quermass/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace quermass::zonal {

double gegenbauer(int l, double lambda, double x) {
    if (l < 0) return 0.0;
    if (l == 0) return 1.0;
    double cm1 = 1.0;
    double c = 2.0 * lambda * x;
    for (int k = 2; k <= l; ++k) {
        double cp = (2.0 * x * (k + lambda - 1.0) * c - (k + 2.0 * lambda - 2.0) * cm1) / k;
        cm1 = c;
        c = cp;
    }
    return c;
}

GegenbauerJet gegenbauer_jet(int l, double lambda, double x) {
    GegenbauerJet j;
    j.value = gegenbauer(l, lambda, x);
    j.d1 = (l >= 1) ? 2.0 * lambda * gegenbauer(l - 1, lambda + 1.0, x) : 0.0;
    j.d2 = (l >= 2) ? 4.0 * lambda * (lambda + 1.0) * gegenbauer(l - 2, lambda + 2.0, x) : 0.0;
    return j;
}

double zonal_norm2(int n, int l) {
    if (n < 2 || l < 0) throw std::invalid_argument("zonal_norm2: need n >= 2, l >= 0");
    const double lambda = 0.5 * (n - 1);
    // h_l = pi 2^{1-2 lambda} Gamma(l+2 lambda) / (l! (l+lambda) Gamma(lambda)^2)
    const double log_h = std::log(std::numbers::pi) + (1.0 - 2.0 * lambda) * std::log(2.0)
        + std::lgamma(l + 2.0 * lambda) - std::lgamma(l + 1.0)
        - std::log(l + lambda) - 2.0 * std::lgamma(lambda);
    return quad::sphere_area(n - 1) * std::exp(log_h);
}

ZonalJet zonal_harmonic(int n, int l, double theta) {
    const double lambda = 0.5 * (n - 1);
    const double x = std::cos(theta);
    const double s = std::sin(theta);
    const GegenbauerJet g = gegenbauer_jet(l, lambda, x);
    const double scale = 1.0 / std::sqrt(zonal_norm2(n, l));
    ZonalJet z;
    z.value = scale * g.value;
    z.d1 = scale * (-s * g.d1);
    z.d2 = scale * (-x * g.d1 + s * s * g.d2);
    return z;
}

} // namespace quermass::zonal
