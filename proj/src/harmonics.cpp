#include "quermass/harmonics.hpp"

#include "quermass/quadrature.hpp"
#include "quermass/zonal.hpp"

#include <cmath>
#include <numbers>

namespace quermass::harmonics {

using sphere::coeff_index;
using sphere::SphereField;

double HarmonicSpectrum::total_energy() const {
    double e = 0;
    for (double c : coeffs) e += c * c;
    return e;
}

double HarmonicSpectrum::degree_energy(int l) const {
    if (l > lmax) return 0.0;
    if (zonal) {
        const double c = coeffs[std::size_t(l)];
        return c * c;
    }
    double e = coeffs[coeff_index(l, 0, false)] * coeffs[coeff_index(l, 0, false)];
    for (int m = 1; m <= l; ++m) {
        e += coeffs[coeff_index(l, m, false)] * coeffs[coeff_index(l, m, false)];
        e += coeffs[coeff_index(l, m, true)] * coeffs[coeff_index(l, m, true)];
    }
    return e;
}

HarmonicSpectrum analyze(const SphereField& field) {
    HarmonicSpectrum s;
    s.n = 2;
    s.lmax = field.grid().lmax;
    s.zonal = false;
    s.coeffs = field.coeffs();
    s.aliasing_warning = field.top_band_fraction() > 1e-6;
    return s;
}

HarmonicSpectrum analyze(const axisym::AxisProfile& profile, int lmax) {
    HarmonicSpectrum s;
    s.n = profile.n();
    s.lmax = lmax;
    s.zonal = true;
    s.coeffs.assign(std::size_t(lmax) + 1, 0.0);
    const auto& gl = quad::gauss_legendre(256);
    const double ring = quad::sphere_area(s.n - 1);
    for (int l = 0; l <= lmax; ++l) {
        double acc = 0;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double theta = 0.5 * std::numbers::pi * (gl.nodes[i] + 1.0);
            const double w = 0.5 * std::numbers::pi * gl.weights[i];
            acc += w * profile.V(theta) * zonal::zonal_harmonic(s.n, l, theta).value *
                   std::pow(std::sin(theta), s.n - 1);
        }
        s.coeffs[std::size_t(l)] = ring * acc;
    }
    // aliasing indicator: energy sitting in the top band
    const double total = s.total_energy();
    s.aliasing_warning = total > 0 && s.degree_energy(lmax) > 1e-6 * total;
    return s;
}

SphereField synthesize(const HarmonicSpectrum& spec,
                       std::shared_ptr<const sphere::SphereGrid> grid) {
    if (spec.zonal || spec.n != 2)
        throw std::invalid_argument("synthesize: grid synthesis is for n = 2 spectra");
    std::vector<double> coeffs(std::size_t(grid->lmax + 1) * std::size_t(grid->lmax + 1), 0.0);
    const int L = std::min(grid->lmax, spec.lmax);
    for (int l = 0; l <= L; ++l) {
        coeffs[coeff_index(l, 0, false)] = spec.coeffs[coeff_index(l, 0, false)];
        for (int m = 1; m <= l; ++m) {
            coeffs[coeff_index(l, m, false)] = spec.coeffs[coeff_index(l, m, false)];
            coeffs[coeff_index(l, m, true)] = spec.coeffs[coeff_index(l, m, true)];
        }
    }
    return SphereField::from_coeffs(std::move(grid), std::move(coeffs));
}

axisym::AxisProfile synthesize_profile(const HarmonicSpectrum& spec) {
    if (!spec.zonal) throw std::invalid_argument("synthesize_profile: zonal spectrum required");
    return axisym::AxisProfile::zonal_series(spec.n, spec.coeffs);
}

SplitSpectra split(const HarmonicSpectrum& spec, double lambda) {
    if (lambda <= 0) throw std::invalid_argument("split: lambda must be positive");
    SplitSpectra out;
    out.low = spec;
    out.high = spec;
    for (int l = 0; l <= spec.lmax; ++l) {
        const bool low = spec.eigenvalue(l) <= lambda;
        auto zero_band = [&](HarmonicSpectrum& s) {
            if (s.zonal) {
                s.coeffs[std::size_t(l)] = 0.0;
            } else {
                s.coeffs[coeff_index(l, 0, false)] = 0.0;
                for (int m = 1; m <= l; ++m) {
                    s.coeffs[coeff_index(l, m, false)] = 0.0;
                    s.coeffs[coeff_index(l, m, true)] = 0.0;
                }
            }
        };
        zero_band(low ? out.high : out.low);
    }
    return out;
}

double rayleigh(const SphereField& field) {
    const auto jets = field.grid_jets();
    std::vector<double> grad2(jets.size()), u2(jets.size());
    for (std::size_t i = 0; i < jets.size(); ++i) {
        grad2[i] = jets[i].grad_norm2();
        u2[i] = jets[i].u * jets[i].u;
    }
    const double denom = sphere::integrate_grid(field.grid(), u2);
    if (denom <= 0) throw std::invalid_argument("rayleigh: zero field");
    return sphere::integrate_grid(field.grid(), grad2) / denom;
}

double rayleigh(const axisym::AxisProfile& profile) {
    const double denom = axisym::l2_norm2(profile);
    if (denom <= 0) throw std::invalid_argument("rayleigh: zero field");
    return axisym::dirichlet_energy(profile) / denom;
}

SphereField project_constraints(const SphereField& field) {
    std::vector<double> coeffs = field.coeffs();
    for (int l = 0; l <= std::min(1, field.grid().lmax); ++l) {
        coeffs[coeff_index(l, 0, false)] = 0.0;
        for (int m = 1; m <= l; ++m) {
            coeffs[coeff_index(l, m, false)] = 0.0;
            coeffs[coeff_index(l, m, true)] = 0.0;
        }
    }
    return SphereField::from_coeffs(field.grid_ptr(), std::move(coeffs));
}

axisym::AxisProfile project_constraints(const axisym::AxisProfile& profile, int lmax) {
    HarmonicSpectrum s = analyze(profile, lmax);
    s.coeffs[0] = 0.0;
    if (lmax >= 1) s.coeffs[1] = 0.0;
    return synthesize_profile(s);
}

double parseval_energy(const HarmonicSpectrum& spec) { return spec.total_energy(); }

double default_split_threshold(int n) { return 2.0 * (n + 1) + 1.0; }

} // namespace quermass::harmonics
