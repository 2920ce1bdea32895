#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace quermass::quad {

struct GaussLegendre {
    std::vector<double> nodes;   // on (-1, 1), ascending
    std::vector<double> weights;
};

/// Gauss-Legendre rule with N points; cached per N.
const GaussLegendre& gauss_legendre(int N);

struct ResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a,b].
/// abs_tol is an absolute target; throws ResolutionError if the interval
/// budget is exhausted before reaching it.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, int max_intervals = 4000);

/// Surface measure of the unit n-sphere, |S^n| = 2 pi^{(n+1)/2} / Gamma((n+1)/2).
double sphere_area(int n);

/// Binomial coefficient in double precision; 0 outside [0, n].
double dbinom(int n, int k);

/// Volume of the unit m-ball, omega_m = |S^{m-1}| / m.
double ball_volume(int m);

/// Runs fn(i) for i in [0, count) on up to QUERMASS_THREADS workers.
/// Results must be written to disjoint slots; the call itself is a barrier.
void parallel_for(int count, const std::function<void(int)>& fn);

} // namespace quermass::quad
