#pragma once

#include <vector>

namespace quermass::zonal {

/// Gegenbauer polynomial C_l^lambda(x) together with first and second
/// x-derivatives (via C' = 2 lambda C_{l-1}^{lambda+1}).
struct GegenbauerJet {
    double value = 0, d1 = 0, d2 = 0;
};

double gegenbauer(int l, double lambda, double x);
GegenbauerJet gegenbauer_jet(int l, double lambda, double x);

/// L^2(S^n) norm constant: integral over S^n of (C_l^lambda(cos theta))^2
/// with lambda = (n-1)/2.
double zonal_norm2(int n, int l);

/// Unit-L^2(S^n) zonal harmonic of degree l evaluated at colatitude theta,
/// with theta-derivatives. Laplace eigenvalue is l(l+n-1).
struct ZonalJet {
    double value = 0, d1 = 0, d2 = 0;
};
ZonalJet zonal_harmonic(int n, int l, double theta);

} // namespace quermass::zonal
