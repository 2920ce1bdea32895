#pragma once

#include "quermass/jet.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace quermass::axisym {

struct TrigTerm {
    bool is_sin = false; // cos(j theta) otherwise
    int j = 0;           // frequency; j = 0 means a constant (cos only)
    double coef = 0.0;
};

// Axially symmetric profile V(theta) on [0, pi] with two derivatives.
// Valid radial graph: 1 + V > 0 and V'(0) = V'(pi) = 0.
class AxisProfile {
public:
    using Fn = std::function<double(double)>;

    AxisProfile(int n, Fn v, Fn dv, Fn d2v, std::string desc);

    static AxisProfile zero(int n);
    static AxisProfile constant(int n, double c);
    static AxisProfile trig(int n, const std::vector<TrigTerm>& terms);
    /// amp times the unit-L2 zonal harmonic of degree l on S^n.
    static AxisProfile zonal(int n, int l, double amp);
    /// Linear combination of unit-L2 zonal harmonics, one coefficient per degree.
    static AxisProfile zonal_series(int n, const std::vector<double>& coeffs);
    /// Quintic-spline interpolant of uniformly spaced samples on [0, pi].
    static AxisProfile from_samples(int n, const std::vector<double>& values);
    /// Parses a trig-polynomial expression such as "0.05*cos(2*theta) - 0.01".
    static AxisProfile parse(int n, const std::string& expr);

    int n() const { return n_; }
    const std::string& description() const { return desc_; }

    double V(double theta) const { return v_(theta); }
    double dV(double theta) const { return dv_(theta); }
    double d2V(double theta) const { return d2v_(theta); }

    /// Covariant jet of the induced field on S^n at colatitude theta.
    PointJet jet(double theta) const;

    /// Checks the profile invariants; throws std::invalid_argument on failure.
    void validate() const;

private:
    int n_;
    Fn v_, dv_, d2v_;
    std::string desc_;
};

enum class Convention { eq812, intrinsic };
enum class Part { signed_part, positive, negative };

/// |S^{n-1}| * integral_0^pi f(theta) sin^{n-1}(theta) dtheta.
double coarea_integral(const std::function<double(double)>& f, int n,
                       double abs_tol = 1e-12);

/// sigma_k of the Hessian of the zero-degree extension, either as printed
/// (eq812) or as the elementary symmetric function of the diagonal covariant
/// Hessian (intrinsic). k >= 1; theta strictly inside (0, pi).
double sigma_k_D2u(const AxisProfile& p, double theta, int k, Convention c);

/// Pointwise sigma_k(h) of the axisymmetric radial graph.
double sigma_k_h(const AxisProfile& p, double theta, int k);

/// integral of sigma_k(h) (or its positive/negative part) against the graph
/// area measure.
double curvature_integral(const AxisProfile& p, int k, Part part = Part::signed_part,
                          double abs_tol = 1e-11);

struct VolumeBarycenter {
    double volume = 0;
    double barycenter_axis = 0; // component along the symmetry axis
};
VolumeBarycenter volume_and_barycenter(const AxisProfile& p);

struct NormalizeOptions {
    double vol_rel_tol = 1e-10;
    double bar_abs_tol = 1e-8;
    int max_rounds = 50;
    int spline_samples = 4097;
    enum class Target { volume, area } target = Target::volume;
};

/// Rescales to the unit-ball volume (or surface area) and translates the
/// barycenter to the origin. Pure rescaling keeps the profile analytic; a
/// nonzero translation re-graphs through a quintic spline.
AxisProfile normalize(const AxisProfile& p, const NormalizeOptions& opt = {});

struct HighestTermIntegral {
    double direct = 0;
    double by_parts = 0;
};

/// The leading sigma_k term of the deficit expansion, evaluated directly and
/// through the w(theta) integration by parts; the two must agree.
HighestTermIntegral highest_term_integral(const AxisProfile& p, int k);

struct FrequencyCutoff {
    double theta0 = 0;
    bool degenerate = false; // k = 1 gives exponent zero
};
FrequencyCutoff frequency_cutoff_theta0(double epsilon, int k);

/// Max-norm residual between the derivative of the telescoped sum and its
/// expanded form over the given colatitude grid (pole-adjacent nodes skipped).
double derivative_identity_residual(const AxisProfile& p, int m,
                                    const std::vector<double>& theta_grid);

/// integral over S^n of |grad u|^2 for the induced field (round metric).
double dirichlet_energy(const AxisProfile& p);

/// integral over S^n of u^2.
double l2_norm2(const AxisProfile& p);

/// sup norm of max(|V|, |V'|) on a dense grid.
double c1_norm(const AxisProfile& p);

} // namespace quermass::axisym
