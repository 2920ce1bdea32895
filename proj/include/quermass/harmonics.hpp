#pragma once

#include "quermass/axisym.hpp"
#include "quermass/sphere_field.hpp"

namespace quermass::harmonics {

// Laplace eigenbasis coefficients: the full real basis for grid fields on
// S^2, zonal (Gegenbauer) coefficients by degree for axisymmetric fields on
// any S^n.
struct HarmonicSpectrum {
    int n = 2;
    int lmax = 0;
    bool zonal = false;
    std::vector<double> coeffs; // zonal: one per degree; else real-basis layout
    bool aliasing_warning = false;

    double eigenvalue(int l) const { return double(l) * (l + n - 1); }

    double total_energy() const;
    double degree_energy(int l) const;
};

HarmonicSpectrum analyze(const sphere::SphereField& field);
HarmonicSpectrum analyze(const axisym::AxisProfile& profile, int lmax = 32);

sphere::SphereField synthesize(const HarmonicSpectrum& spec,
                               std::shared_ptr<const sphere::SphereGrid> grid);
axisym::AxisProfile synthesize_profile(const HarmonicSpectrum& spec);

struct SplitSpectra {
    HarmonicSpectrum low;  // eigenvalues <= lambda
    HarmonicSpectrum high; // the rest
};
SplitSpectra split(const HarmonicSpectrum& spec, double lambda);

/// Rayleigh quotient int |grad u|^2 / int u^2, both by quadrature.
double rayleigh(const sphere::SphereField& field);
double rayleigh(const axisym::AxisProfile& profile);

/// Zeroes the l = 0 and l = 1 components (mean and barycenter modes).
sphere::SphereField project_constraints(const sphere::SphereField& field);
axisym::AxisProfile project_constraints(const axisym::AxisProfile& profile, int lmax = 32);

/// Spectral Parseval mass, to compare against the quadrature of u^2.
double parseval_energy(const HarmonicSpectrum& spec);

/// Default split threshold: just above the constraint modes, 2(n+1) + 1.
double default_split_threshold(int n);

} // namespace quermass::harmonics
