#pragma once

#include "quermass/jet.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace quermass::sphere {

// Gauss-Legendre colatitude x uniform azimuth grid on S^2 with the
// associated-Legendre tables needed for analysis and synthesis up to lmax.
struct SphereGrid {
    int Ltheta = 0, Lphi = 0, lmax = 0;
    std::vector<double> theta, sin_t, cos_t, w; // w: Gauss-Legendre weights in cos(theta)
    std::vector<double> phi;
    double dphi = 0;
    std::vector<double> plm, dplm; // [row * nlm + idx(l,m)]

    static std::shared_ptr<const SphereGrid> make(int Ltheta, int Lphi, int lmax);
    static std::shared_ptr<const SphereGrid> make_default();

    std::size_t nlm() const { return std::size_t(lmax + 1) * (lmax + 2) / 2; }
    static std::size_t idx(int l, int m) { return std::size_t(l) * (l + 1) / 2 + m; }
    std::size_t node(int j, int i) const { return std::size_t(j) * Lphi + std::size_t(i); }
};

/// Real orthonormal basis coefficients: per degree l the 2l+1 slots are
/// [m=0, cos(1.), sin(1.), ..., cos(l.), sin(l.)] starting at offset l^2.
std::size_t coeff_index(int l, int m, bool sin_part);

// Scalar function on S^2 held as grid samples plus spectral coefficients;
// the two stay in sync through the constructors.
class SphereField {
public:
    SphereField(std::shared_ptr<const SphereGrid> grid, std::vector<double> samples,
                std::vector<double> coeffs);

    static SphereField from_samples(std::shared_ptr<const SphereGrid> grid,
                                    std::vector<double> samples);
    static SphereField from_coeffs(std::shared_ptr<const SphereGrid> grid,
                                   std::vector<double> coeffs);
    static SphereField from_function(std::shared_ptr<const SphereGrid> grid,
                                     const std::function<double(double, double)>& fn);
    static SphereField constant(std::shared_ptr<const SphereGrid> grid, double c);

    const SphereGrid& grid() const { return *grid_; }
    std::shared_ptr<const SphereGrid> grid_ptr() const { return grid_; }
    const std::vector<double>& samples() const { return samples_; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    /// Same spectral content resampled on another grid.
    SphereField on_grid(std::shared_ptr<const SphereGrid> g) const;

    double value_at(double theta, double phi) const;

    /// Covariant jet at an arbitrary point (orthonormal frame e_theta, e_phi).
    PointJet jet_at(double theta, double phi) const;

    /// Covariant jets at every grid node, row-major, via fast synthesis.
    std::vector<PointJet> grid_jets() const;

    /// Energy fraction carried by the top band l = lmax (aliasing indicator).
    double top_band_fraction() const;

    double max_abs() const;

private:
    std::shared_ptr<const SphereGrid> grid_;
    std::vector<double> samples_;
    std::vector<double> coeffs_;
};

/// Forward transform of grid samples (exact for band-limited data).
std::vector<double> analyze_samples(const SphereGrid& g, const std::vector<double>& samples);

/// Synthesis of samples from coefficients.
std::vector<double> synthesize_samples(const SphereGrid& g, const std::vector<double>& coeffs);

/// Quadrature of a per-node integrand against dA on S^2.
double integrate_grid(const SphereGrid& g, const std::vector<double>& values);

/// u'(x) = u(R x) for a 3x3 rotation matrix R, evaluated spectrally.
SphereField rotate_field(const SphereField& f, const Eigen::Matrix3d& R);

/// Unit vector of (theta, phi) and back.
Eigen::Vector3d sphere_point(double theta, double phi);
void sphere_angles(const Eigen::Vector3d& x, double& theta, double& phi);

} // namespace quermass::sphere
