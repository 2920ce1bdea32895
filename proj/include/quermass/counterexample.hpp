#pragma once

#include "quermass/axisym.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace quermass::cex {

// Radial bump profile supported in [0, 1/kappa]: nonpositive, with slope
// ramping up to exactly eps/2 on the plateau [1/(2 kappa), 3/(4 kappa)].
struct BumpSpec {
    double epsilon = 0;
    double kappa = 0;

    double f(double r) const;
    double fp(double r) const;
    double fpp(double r) const;

    double support() const { return 1.0 / kappa; }
};

/// Builds the bump and verifies its defining constraints on a dense grid.
BumpSpec make_bump(double epsilon, double kappa);

struct RadialSigma {
    double product_form = 0;  // C(n-1,k-1) f'' (f'/r)^{k-1} + C(n-1,k) (f'/r)^k
    double divergence_form = 0;  // C(n-1,k-1) r^{1-n} ((r^{n-k}/k)(f')^k)'
};

/// Flat-space sigma_k of the Hessian of the radial bump, both printed forms.
RadialSigma radial_sigma_flat(const BumpSpec& spec, double r, int k, int n);

struct DirichletSigma {
    double by_parts = 0;      // C(n-1,k-1)(n-k) 2/(k(k+2)) int r^{n-k-1} (f')^{k+2}
    double direct = 0;        // int (f')^2 sigma_k r^{n-1} dr
    double plateau_bound = 0; // closed-form lower bound from the plateau alone
};

/// The radial Dirichlet-sigma integral (angular measure omitted, as in the
/// closed form it is compared against).
DirichletSigma dirichlet_sigma_integral(const BumpSpec& spec, int k, int n);

enum class PackMode { count, greedy };

struct PackedBumps {
    int n = 0;
    double kappa = 0;
    long q = 0;
    std::vector<Eigen::VectorXd> centers; // greedy mode only
    bool greedy = false;
    double packing_constant = 0; // c_n with q = floor(c_n kappa^n)
};

/// Separated points on S^n: `count` uses the covering lower bound
/// q = floor(c_n kappa^n); `greedy` (n <= 3, kappa <= 32) places points by
/// Poisson-disk rejection with pairwise chordal distance >= 2/kappa.
PackedBumps pack_caps(int n, double kappa, PackMode mode, std::uint64_t seed = 12345);

// q disjoint identical bumps glued onto the unit sphere.
struct BumpsDomain {
    int n = 0;
    BumpSpec spec;
    long q = 0;

    axisym::AxisProfile cap_profile() const; // single-bump zonal profile
    double cap_area() const;                 // |geodesic cap of radius 1/kappa|
};

/// integral of sigma_k(h) (or a part) against the graph measure over one
/// geodesic cap of radius 1/kappa, resolved on the bump support only.
double cap_curvature_integral(const BumpsDomain& b, int k, axisym::Part part);

/// Cap-supported Dirichlet energy and L2 mass of the bump field.
double cap_dirichlet_energy(const BumpsDomain& b);
double cap_l2_norm2(const BumpsDomain& b);

struct CounterexampleResult {
    double I_k = 0;
    double baseline = 0;       // C(n,k) |S^n|
    long q = 0;
    double per_cap_exact = 0;  // per-bump integral minus the spherical share
    double per_cap_flat = 0;   // flat-space quadratic prediction of the same
};

/// Assembles the packed-bump domain and integrates sigma_k(h) over it, each
/// cap evaluated exactly through the 1D pipeline.
CounterexampleResult assemble_counterexample(int n, int k, double epsilon, double kappa);

struct SweepRow {
    double kappa = 0;
    long q = 0;
    double I_k = 0;
    double baseline = 0;
    double margin = 0; // I_k - baseline
};

std::vector<SweepRow> kappa_sweep(int n, int k, double epsilon,
                                  const std::vector<double>& kappas);

} // namespace quermass::cex
