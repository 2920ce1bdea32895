#include "quermass/sphere_field.hpp"

#include "quermass/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace quermass::sphere {

namespace {

constexpr double kPi = std::numbers::pi;

// Fully normalized associated Legendre column at one colatitude:
// int_0^pi Plm(theta)^2 sin(theta) dtheta = 1. No Condon-Shortley phase.
void legendre_column(int lmax, double theta, std::vector<double>& P, std::vector<double>& dP) {
    const double st = std::sin(theta), ct = std::cos(theta);
    const std::size_t n = std::size_t(lmax + 1) * (lmax + 2) / 2;
    P.assign(n, 0.0);
    dP.assign(n, 0.0);
    auto at = [&](int l, int m) -> std::size_t { return SphereGrid::idx(l, m); };

    P[at(0, 0)] = 1.0 / std::sqrt(2.0);
    for (int m = 1; m <= lmax; ++m)
        P[at(m, m)] = P[at(m - 1, m - 1)] * st * std::sqrt((2.0 * m + 1.0) / (2.0 * m));
    for (int m = 0; m < lmax; ++m)
        P[at(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * ct * P[at(m, m)];
    for (int m = 0; m <= lmax; ++m)
        for (int l = m + 2; l <= lmax; ++l) {
            const double a = std::sqrt(((2.0 * l - 1.0) * (2.0 * l + 1.0)) /
                                       (double(l - m) * double(l + m)));
            const double b = std::sqrt(((2.0 * l + 1.0) * (l - 1.0 + m) * (l - 1.0 - m)) /
                                       ((2.0 * l - 3.0) * double(l - m) * double(l + m)));
            P[at(l, m)] = a * ct * P[at(l - 1, m)] - b * P[at(l - 2, m)];
        }

    // dP/dtheta = l cot(theta) P_{l,m} - c_{l,m} P_{l-1,m} / sin(theta)
    for (int m = 0; m <= lmax; ++m)
        for (int l = m; l <= lmax; ++l) {
            if (l == 0) continue;
            double low = (l - 1 >= m) ? P[at(l - 1, m)] : 0.0;
            const double c = std::sqrt(((2.0 * l + 1.0) * double(l - m) * double(l + m)) /
                                       (2.0 * l - 1.0));
            dP[at(l, m)] = (l * ct * P[at(l, m)] - c * low) / st;
        }
}

double azimuth_norm(int m) { return (m == 0) ? 1.0 / std::sqrt(2.0 * kPi) : 1.0 / std::sqrt(kPi); }

} // namespace

std::size_t coeff_index(int l, int m, bool sin_part) {
    std::size_t base = std::size_t(l) * l;
    if (m == 0) return base;
    return base + 2 * std::size_t(m) - (sin_part ? 0 : 1);
}

std::shared_ptr<const SphereGrid> SphereGrid::make(int Ltheta, int Lphi, int lmax) {
    if (Ltheta < lmax + 1 || Lphi < 2 * lmax + 1)
        throw std::invalid_argument("SphereGrid: resolution too low for requested lmax");
    auto g = std::make_shared<SphereGrid>();
    g->Ltheta = Ltheta;
    g->Lphi = Lphi;
    g->lmax = lmax;
    const auto& gl = quad::gauss_legendre(Ltheta);
    g->theta.resize(std::size_t(Ltheta));
    g->sin_t.resize(std::size_t(Ltheta));
    g->cos_t.resize(std::size_t(Ltheta));
    g->w.resize(std::size_t(Ltheta));
    for (int j = 0; j < Ltheta; ++j) {
        // ascending theta; GL nodes ascend in x = cos(theta)
        const double x = gl.nodes[std::size_t(Ltheta - 1 - j)];
        g->theta[std::size_t(j)] = std::acos(x);
        g->cos_t[std::size_t(j)] = x;
        g->sin_t[std::size_t(j)] = std::sqrt(1.0 - x * x);
        g->w[std::size_t(j)] = gl.weights[std::size_t(Ltheta - 1 - j)];
    }
    g->dphi = 2.0 * kPi / Lphi;
    g->phi.resize(std::size_t(Lphi));
    for (int i = 0; i < Lphi; ++i) g->phi[std::size_t(i)] = g->dphi * i;

    g->plm.resize(std::size_t(Ltheta) * g->nlm());
    g->dplm.resize(std::size_t(Ltheta) * g->nlm());
    quad::parallel_for(Ltheta, [&](int j) {
        std::vector<double> P, dP;
        legendre_column(lmax, g->theta[std::size_t(j)], P, dP);
        std::copy(P.begin(), P.end(), g->plm.begin() + long(std::size_t(j) * g->nlm()));
        std::copy(dP.begin(), dP.end(), g->dplm.begin() + long(std::size_t(j) * g->nlm()));
    });
    return g;
}

std::shared_ptr<const SphereGrid> SphereGrid::make_default() { return make(96, 192, 64); }

std::vector<double> analyze_samples(const SphereGrid& g, const std::vector<double>& samples) {
    if (samples.size() != std::size_t(g.Ltheta) * std::size_t(g.Lphi))
        throw std::invalid_argument("analyze: sample count does not match grid");
    const int L = g.lmax;
    std::vector<double> coeffs(std::size_t(L + 1) * (L + 1), 0.0);

    // azimuthal DFT per row, then Legendre sums
    std::vector<double> Fc(std::size_t(g.Ltheta) * (L + 1), 0.0);
    std::vector<double> Fs(std::size_t(g.Ltheta) * (L + 1), 0.0);
    quad::parallel_for(g.Ltheta, [&](int j) {
        for (int m = 0; m <= L; ++m) {
            double c = 0, s = 0;
            for (int i = 0; i < g.Lphi; ++i) {
                const double a = m * g.phi[std::size_t(i)];
                const double u = samples[g.node(j, i)];
                c += u * std::cos(a);
                s += u * std::sin(a);
            }
            Fc[std::size_t(j) * (L + 1) + m] = c * g.dphi;
            Fs[std::size_t(j) * (L + 1) + m] = s * g.dphi;
        }
    });

    for (int l = 0; l <= L; ++l)
        for (int m = 0; m <= l; ++m) {
            const std::size_t lm = SphereGrid::idx(l, m);
            double cc = 0, cs = 0;
            for (int j = 0; j < g.Ltheta; ++j) {
                const double p = g.plm[std::size_t(j) * g.nlm() + lm] * g.w[std::size_t(j)];
                cc += p * Fc[std::size_t(j) * (L + 1) + m];
                cs += p * Fs[std::size_t(j) * (L + 1) + m];
            }
            coeffs[coeff_index(l, m, false)] = cc * azimuth_norm(m);
            if (m > 0) coeffs[coeff_index(l, m, true)] = cs * azimuth_norm(m);
        }
    return coeffs;
}

namespace {

// Per-row synthesis workspace: order-m profiles of sum_l c_{lm} Plm and the
// theta-derivative versions.
struct RowProfiles {
    std::vector<double> Ac, As, Bc, Bs, Cc, Cs;
};

void row_profiles(const SphereGrid& g, const std::vector<double>& coeffs, int j, RowProfiles& r) {
    const int L = g.lmax;
    r.Ac.assign(std::size_t(L + 1), 0.0);
    r.As.assign(std::size_t(L + 1), 0.0);
    r.Bc.assign(std::size_t(L + 1), 0.0);
    r.Bs.assign(std::size_t(L + 1), 0.0);
    r.Cc.assign(std::size_t(L + 1), 0.0);
    r.Cs.assign(std::size_t(L + 1), 0.0);
    const double st = g.sin_t[std::size_t(j)];
    const double cot = g.cos_t[std::size_t(j)] / st;
    const double inv_s2 = 1.0 / (st * st);
    const double* P = g.plm.data() + std::size_t(j) * g.nlm();
    const double* dP = g.dplm.data() + std::size_t(j) * g.nlm();
    for (int l = 0; l <= L; ++l)
        for (int m = 0; m <= l; ++m) {
            const std::size_t lm = SphereGrid::idx(l, m);
            const double p = P[lm], dp = dP[lm];
            const double d2p = -cot * dp - (l * (l + 1.0) - m * m * inv_s2) * p;
            const double cc = coeffs[coeff_index(l, m, false)];
            r.Ac[std::size_t(m)] += cc * p;
            r.Bc[std::size_t(m)] += cc * dp;
            r.Cc[std::size_t(m)] += cc * d2p;
            if (m > 0) {
                const double cs = coeffs[coeff_index(l, m, true)];
                r.As[std::size_t(m)] += cs * p;
                r.Bs[std::size_t(m)] += cs * dp;
                r.Cs[std::size_t(m)] += cs * d2p;
            }
        }
}

} // namespace

std::vector<double> synthesize_samples(const SphereGrid& g, const std::vector<double>& coeffs) {
    std::vector<double> out(std::size_t(g.Ltheta) * std::size_t(g.Lphi), 0.0);
    quad::parallel_for(g.Ltheta, [&](int j) {
        RowProfiles r;
        row_profiles(g, coeffs, j, r);
        for (int i = 0; i < g.Lphi; ++i) {
            double u = 0;
            for (int m = 0; m <= g.lmax; ++m) {
                const double a = m * g.phi[std::size_t(i)];
                u += azimuth_norm(m) *
                     (r.Ac[std::size_t(m)] * std::cos(a) + r.As[std::size_t(m)] * std::sin(a));
            }
            out[g.node(j, i)] = u;
        }
    });
    return out;
}

double integrate_grid(const SphereGrid& g, const std::vector<double>& values) {
    if (values.size() != std::size_t(g.Ltheta) * std::size_t(g.Lphi))
        throw std::invalid_argument("integrate_grid: size mismatch");
    double total = 0;
    for (int j = 0; j < g.Ltheta; ++j) {
        double row = 0;
        for (int i = 0; i < g.Lphi; ++i) row += values[g.node(j, i)];
        total += row * g.w[std::size_t(j)];
    }
    return total * g.dphi;
}

SphereField::SphereField(std::shared_ptr<const SphereGrid> grid, std::vector<double> samples,
                         std::vector<double> coeffs)
    : grid_(std::move(grid)), samples_(std::move(samples)), coeffs_(std::move(coeffs)) {}

SphereField SphereField::from_samples(std::shared_ptr<const SphereGrid> grid,
                                      std::vector<double> samples) {
    auto coeffs = analyze_samples(*grid, samples);
    return SphereField(std::move(grid), std::move(samples), std::move(coeffs));
}

SphereField SphereField::from_coeffs(std::shared_ptr<const SphereGrid> grid,
                                     std::vector<double> coeffs) {
    if (coeffs.size() != std::size_t(grid->lmax + 1) * std::size_t(grid->lmax + 1))
        throw std::invalid_argument("from_coeffs: coefficient count does not match lmax");
    auto samples = synthesize_samples(*grid, coeffs);
    return SphereField(std::move(grid), std::move(samples), std::move(coeffs));
}

SphereField SphereField::from_function(std::shared_ptr<const SphereGrid> grid,
                                       const std::function<double(double, double)>& fn) {
    std::vector<double> samples(std::size_t(grid->Ltheta) * std::size_t(grid->Lphi));
    for (int j = 0; j < grid->Ltheta; ++j)
        for (int i = 0; i < grid->Lphi; ++i)
            samples[grid->node(j, i)] = fn(grid->theta[std::size_t(j)], grid->phi[std::size_t(i)]);
    return from_samples(std::move(grid), std::move(samples));
}

SphereField SphereField::constant(std::shared_ptr<const SphereGrid> grid, double c) {
    return from_function(std::move(grid), [c](double, double) { return c; });
}

SphereField SphereField::on_grid(std::shared_ptr<const SphereGrid> g) const {
    std::vector<double> coeffs(std::size_t(g->lmax + 1) * std::size_t(g->lmax + 1), 0.0);
    const int L = std::min(g->lmax, grid_->lmax);
    for (int l = 0; l <= L; ++l) {
        coeffs[coeff_index(l, 0, false)] = coeffs_[coeff_index(l, 0, false)];
        for (int m = 1; m <= l; ++m) {
            coeffs[coeff_index(l, m, false)] = coeffs_[coeff_index(l, m, false)];
            coeffs[coeff_index(l, m, true)] = coeffs_[coeff_index(l, m, true)];
        }
    }
    return from_coeffs(std::move(g), std::move(coeffs));
}

double SphereField::value_at(double theta, double phi) const {
    std::vector<double> P, dP;
    legendre_column(grid_->lmax, theta, P, dP);
    double u = 0;
    for (int l = 0; l <= grid_->lmax; ++l)
        for (int m = 0; m <= l; ++m) {
            const double p = P[SphereGrid::idx(l, m)];
            const double a = m * phi;
            double v = coeffs_[coeff_index(l, m, false)] * std::cos(a);
            if (m > 0) v += coeffs_[coeff_index(l, m, true)] * std::sin(a);
            u += azimuth_norm(m) * p * v;
        }
    return u;
}

namespace {

PointJet covariant_jet(double st, double ct, double u, double ut, double up, double utt,
                       double utp, double upp) {
    PointJet jet;
    jet.u = u;
    jet.grad = Eigen::VectorXd(2);
    jet.grad[0] = ut;
    jet.grad[1] = up / st;
    jet.hess = SymMatrix(2);
    const double cot = ct / st;
    jet.hess.set(0, 0, utt);
    jet.hess.set(0, 1, (utp - cot * up) / st);
    jet.hess.set(1, 1, upp / (st * st) + cot * ut);
    return jet;
}

} // namespace

PointJet SphereField::jet_at(double theta, double phi) const {
    std::vector<double> P, dP;
    legendre_column(grid_->lmax, theta, P, dP);
    const double st = std::sin(theta), ct = std::cos(theta);
    const double cot = ct / st;
    double u = 0, ut = 0, up = 0, utt = 0, utp = 0, upp = 0;
    for (int l = 0; l <= grid_->lmax; ++l)
        for (int m = 0; m <= l; ++m) {
            const std::size_t lm = SphereGrid::idx(l, m);
            const double p = P[lm], dp = dP[lm];
            const double d2p = -cot * dp - (l * (l + 1.0) - m * m / (st * st)) * p;
            const double a = m * phi;
            const double cosa = std::cos(a), sina = std::sin(a);
            const double cc = coeffs_[coeff_index(l, m, false)];
            const double cs = (m > 0) ? coeffs_[coeff_index(l, m, true)] : 0.0;
            const double nrm = azimuth_norm(m);
            const double ang = cc * cosa + cs * sina;
            const double dang = m * (-cc * sina + cs * cosa);
            u += nrm * p * ang;
            ut += nrm * dp * ang;
            utt += nrm * d2p * ang;
            up += nrm * p * dang;
            utp += nrm * dp * dang;
            upp -= nrm * p * double(m) * double(m) * ang;
        }
    return covariant_jet(st, ct, u, ut, up, utt, utp, upp);
}

std::vector<PointJet> SphereField::grid_jets() const {
    const SphereGrid& g = *grid_;
    std::vector<PointJet> jets(std::size_t(g.Ltheta) * std::size_t(g.Lphi));
    quad::parallel_for(g.Ltheta, [&](int j) {
        RowProfiles r;
        row_profiles(g, coeffs_, j, r);
        const double st = g.sin_t[std::size_t(j)], ct = g.cos_t[std::size_t(j)];
        for (int i = 0; i < g.Lphi; ++i) {
            double u = 0, ut = 0, up = 0, utt = 0, utp = 0, upp = 0;
            for (int m = 0; m <= g.lmax; ++m) {
                const double a = m * g.phi[std::size_t(i)];
                const double cosa = std::cos(a), sina = std::sin(a);
                const double nrm = azimuth_norm(m);
                const double A = r.Ac[std::size_t(m)] * cosa + r.As[std::size_t(m)] * sina;
                const double B = r.Bc[std::size_t(m)] * cosa + r.Bs[std::size_t(m)] * sina;
                const double C = r.Cc[std::size_t(m)] * cosa + r.Cs[std::size_t(m)] * sina;
                const double Ad = m * (-r.Ac[std::size_t(m)] * sina + r.As[std::size_t(m)] * cosa);
                const double Bd = m * (-r.Bc[std::size_t(m)] * sina + r.Bs[std::size_t(m)] * cosa);
                u += nrm * A;
                ut += nrm * B;
                utt += nrm * C;
                up += nrm * Ad;
                utp += nrm * Bd;
                upp -= nrm * double(m) * double(m) * A;
            }
            jets[g.node(j, i)] = covariant_jet(st, ct, u, ut, up, utt, utp, upp);
        }
    });
    return jets;
}

double SphereField::top_band_fraction() const {
    double total = 0, top = 0;
    for (int l = 0; l <= grid_->lmax; ++l) {
        double band = coeffs_[coeff_index(l, 0, false)] * coeffs_[coeff_index(l, 0, false)];
        for (int m = 1; m <= l; ++m) {
            band += coeffs_[coeff_index(l, m, false)] * coeffs_[coeff_index(l, m, false)];
            band += coeffs_[coeff_index(l, m, true)] * coeffs_[coeff_index(l, m, true)];
        }
        total += band;
        if (l == grid_->lmax) top = band;
    }
    return total > 0 ? top / total : 0.0;
}

double SphereField::max_abs() const {
    double m = 0;
    for (double v : samples_) m = std::max(m, std::abs(v));
    return m;
}

Eigen::Vector3d sphere_point(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

void sphere_angles(const Eigen::Vector3d& x, double& theta, double& phi) {
    const Eigen::Vector3d u = x.normalized();
    theta = std::acos(std::clamp(u[2], -1.0, 1.0));
    phi = std::atan2(u[1], u[0]);
    if (phi < 0) phi += 2.0 * kPi;
}

SphereField rotate_field(const SphereField& f, const Eigen::Matrix3d& R) {
    const SphereGrid& g = f.grid();
    std::vector<double> samples(std::size_t(g.Ltheta) * std::size_t(g.Lphi));
    quad::parallel_for(g.Ltheta, [&](int j) {
        for (int i = 0; i < g.Lphi; ++i) {
            const Eigen::Vector3d y =
                R * sphere_point(g.theta[std::size_t(j)], g.phi[std::size_t(i)]);
            double th, ph;
            sphere_angles(y, th, ph);
            samples[g.node(j, i)] = f.value_at(th, ph);
        }
    });
    return SphereField::from_samples(f.grid_ptr(), std::move(samples));
}

} // namespace quermass::sphere
