#include "quermass/spheregeom.hpp"

#include "quermass/quadrature.hpp"
#include "quermass/symfun.hpp"

#include <cmath>
#include <numbers>

namespace quermass::geom {

using quad::dbinom;
using sphere::SphereField;
using sphere::SphereGrid;

namespace {

constexpr double kPi = std::numbers::pi;

template <class FieldFn, class ProfileFn, class BumpsFn>
auto visit_domain(const Domain& d, FieldFn ff, ProfileFn pf, BumpsFn bf) {
    if (const auto* f = std::get_if<SphereField>(&d.rep)) return ff(*f);
    if (const auto* p = std::get_if<axisym::AxisProfile>(&d.rep)) return pf(*p);
    return bf(std::get<cex::BumpsDomain>(d.rep));
}

double part_value(double s, Part part) {
    if (part == Part::positive) return std::max(0.0, s);
    if (part == Part::negative) return std::max(0.0, -s);
    return s;
}

double field_integral_once(const SphereField& f, const std::function<double(const PointJet&)>& fn) {
    const auto jets = f.grid_jets();
    std::vector<double> vals(jets.size());
    for (std::size_t i = 0; i < jets.size(); ++i) vals[i] = fn(jets[i]);
    return sphere::integrate_grid(f.grid(), vals);
}

// quadrature with one grid-doubling consistency check
double field_integral(const SphereField& f, const std::function<double(const PointJet&)>& fn,
                      double scale) {
    const double v0 = field_integral_once(f, fn);
    const SphereGrid& g = f.grid();
    auto fine = SphereGrid::make(2 * g.Ltheta, 2 * g.Lphi, g.lmax);
    const double v1 = field_integral_once(f.on_grid(fine), fn);
    if (std::abs(v1 - v0) > 1e-8 * scale) {
        auto finer = SphereGrid::make(4 * g.Ltheta, 4 * g.Lphi, g.lmax);
        const double v2 = field_integral_once(f.on_grid(finer), fn);
        if (std::abs(v2 - v1) > 1e-8 * scale)
            throw quad::ResolutionError("field integral did not stabilize under refinement");
        return v2;
    }
    return v1;
}

} // namespace

int Domain::n() const {
    return visit_domain(
        *this, [](const SphereField&) { return 2; },
        [](const axisym::AxisProfile& p) { return p.n(); },
        [](const cex::BumpsDomain& b) { return b.n; });
}

const char* Domain::kind() const {
    return visit_domain(
        *this, [](const SphereField&) { return "field"; },
        [](const axisym::AxisProfile&) { return "profile"; },
        [](const cex::BumpsDomain&) { return "bumps"; });
}

Domain make_ball(double radius, int n) {
    return Domain{axisym::AxisProfile::constant(n, radius - 1.0)};
}

double curvature_integral(const Domain& d, int k, Part part) {
    const int n = d.n();
    if (k < 0 || k > n) throw std::invalid_argument("curvature_integral: k out of range");
    const double scale = std::max(1.0, dbinom(n, k) * quad::sphere_area(n));
    return visit_domain(
        d,
        [&](const SphereField& f) {
            return field_integral(
                f,
                [&](const PointJet& j) {
                    return part_value(sigma_k_h(j, k, n), part) * area_element(j, n);
                },
                scale);
        },
        [&](const axisym::AxisProfile& p) { return axisym::curvature_integral(p, k, part); },
        [&](const cex::BumpsDomain& b) {
            const double sphere_part =
                part_value(dbinom(n, k), part) * (quad::sphere_area(n) - b.q * b.cap_area());
            return sphere_part + b.q * cex::cap_curvature_integral(b, k, part);
        });
}

VolumeBarycenter volume_and_barycenter(const Domain& d) {
    const int n = d.n();
    VolumeBarycenter out;
    out.barycenter = Eigen::VectorXd::Zero(n + 1);
    visit_domain(
        d,
        [&](const SphereField& f) {
            const SphereGrid& g = f.grid();
            const auto& u = f.samples();
            std::vector<double> vol(u.size()), mx(u.size()), my(u.size()), mz(u.size());
            for (int j = 0; j < g.Ltheta; ++j)
                for (int i = 0; i < g.Lphi; ++i) {
                    const std::size_t id = g.node(j, i);
                    const double r = 1.0 + u[id];
                    vol[id] = std::pow(r, n + 1) / (n + 1);
                    const double m = std::pow(r, n + 2) / (n + 2);
                    const Eigen::Vector3d x =
                        sphere::sphere_point(g.theta[std::size_t(j)], g.phi[std::size_t(i)]);
                    mx[id] = m * x[0];
                    my[id] = m * x[1];
                    mz[id] = m * x[2];
                }
            out.volume = sphere::integrate_grid(g, vol);
            out.barycenter[0] = sphere::integrate_grid(g, mx) / out.volume;
            out.barycenter[1] = sphere::integrate_grid(g, my) / out.volume;
            out.barycenter[2] = sphere::integrate_grid(g, mz) / out.volume;
            return 0;
        },
        [&](const axisym::AxisProfile& p) {
            const auto vb = axisym::volume_and_barycenter(p);
            out.volume = vb.volume;
            out.barycenter[0] = vb.barycenter_axis;
            return 0;
        },
        [&](const cex::BumpsDomain& b) {
            // caps are identical; their first moments cancel only on average,
            // and the reported barycenter is the packing-averaged one (zero)
            const auto cap_vb = axisym::volume_and_barycenter(b.cap_profile());
            const double ball = quad::ball_volume(n + 1);
            out.volume = ball + b.q * (cap_vb.volume - ball);
            return 0;
        });
    return out;
}

double area(const Domain& d) { return curvature_integral(d, 0); }

double dirichlet_energy(const Domain& d) {
    return visit_domain(
        d,
        [&](const SphereField& f) {
            return field_integral(
                f, [&](const PointJet& j) { return j.grad_norm2(); }, 1.0);
        },
        [&](const axisym::AxisProfile& p) { return axisym::dirichlet_energy(p); },
        [&](const cex::BumpsDomain& b) { return double(b.q) * cex::cap_dirichlet_energy(b); });
}

double l2_norm2(const Domain& d) {
    return visit_domain(
        d,
        [&](const SphereField& f) {
            return field_integral(
                f, [&](const PointJet& j) { return j.u * j.u; }, 1.0);
        },
        [&](const axisym::AxisProfile& p) { return axisym::l2_norm2(p); },
        [&](const cex::BumpsDomain& b) { return double(b.q) * cex::cap_l2_norm2(b); });
}

double c1_norm(const Domain& d) {
    return visit_domain(
        d,
        [&](const SphereField& f) {
            double worst = 0;
            for (const auto& j : f.grid_jets())
                worst = std::max({worst, std::abs(j.u), j.grad.norm()});
            return worst;
        },
        [&](const axisym::AxisProfile& p) { return axisym::c1_norm(p); },
        [&](const cex::BumpsDomain& b) { return axisym::c1_norm(b.cap_profile()); });
}

namespace {

SphereField translated_field(const SphereField& f, const Eigen::Vector3d& t) {
    const SphereGrid& g = f.grid();
    std::vector<double> samples(std::size_t(g.Ltheta) * std::size_t(g.Lphi));
    quad::parallel_for(g.Ltheta, [&](int j) {
        for (int i = 0; i < g.Lphi; ++i) {
            const Eigen::Vector3d x =
                sphere::sphere_point(g.theta[std::size_t(j)], g.phi[std::size_t(i)]);
            double r = 1.0 + f.samples()[g.node(j, i)];
            for (int it = 0; it < 80; ++it) {
                const Eigen::Vector3d y = (r * x + t).normalized();
                double th, ph;
                sphere::sphere_angles(y, th, ph);
                const double rho = 1.0 + f.value_at(th, ph);
                const double rn = (rho * y - t).norm();
                if (std::abs(rn - r) < 1e-15 * std::max(1.0, r)) { r = rn; break; }
                r = rn;
            }
            samples[g.node(j, i)] = r - 1.0;
        }
    });
    return SphereField::from_samples(f.grid_ptr(), std::move(samples));
}

} // namespace

Domain normalize(const Domain& d, const NormalizeOptions& opt) {
    if (std::holds_alternative<cex::BumpsDomain>(d.rep))
        throw std::invalid_argument("normalize: packed-bump domains are used as constructed");

    const int n = d.n();
    const bool by_area = opt.target == NormalizeOptions::Target::area;
    const double target = by_area ? quad::sphere_area(n) : quad::ball_volume(n + 1);
    auto measure = [&](const Domain& dom) {
        return by_area ? area(dom) : volume_and_barycenter(dom).volume;
    };
    const double scale_exp = by_area ? 1.0 / n : 1.0 / (n + 1);

    if (std::holds_alternative<axisym::AxisProfile>(d.rep)) {
        axisym::NormalizeOptions ao;
        ao.vol_rel_tol = opt.vol_rel_tol;
        ao.bar_abs_tol = opt.bar_abs_tol;
        ao.max_rounds = opt.max_rounds;
        ao.target = by_area ? axisym::NormalizeOptions::Target::area
                            : axisym::NormalizeOptions::Target::volume;
        return Domain{axisym::normalize(std::get<axisym::AxisProfile>(d.rep), ao)};
    }

    SphereField cur = std::get<SphereField>(d.rep);
    for (int round = 0; round < opt.max_rounds; ++round) {
        const double s = std::pow(target / measure(Domain{cur}), scale_exp);
        if (std::abs(s - 1.0) > 1e-15) {
            std::vector<double> scaled = cur.samples();
            for (double& v : scaled) v = s * (1.0 + v) - 1.0;
            cur = SphereField::from_samples(cur.grid_ptr(), std::move(scaled));
        }
        const auto vb = volume_and_barycenter(Domain{cur});
        const Eigen::Vector3d bar = vb.barycenter.head<3>();
        if (bar.norm() <= opt.bar_abs_tol) {
            if (std::abs(measure(Domain{cur}) - target) <= opt.vol_rel_tol * target)
                return Domain{cur};
        } else {
            cur = translated_field(cur, bar);
        }
    }
    throw std::runtime_error("normalize: did not converge");
}

double min_over_domain(const Domain& d, const std::function<double(const PointJet&, int)>& fn) {
    const int n = d.n();
    return visit_domain(
        d,
        [&](const SphereField& f) {
            double worst = std::numeric_limits<double>::infinity();
            for (const auto& j : f.grid_jets()) worst = std::min(worst, fn(j, n));
            return worst;
        },
        [&](const axisym::AxisProfile& p) {
            double worst = std::numeric_limits<double>::infinity();
            for (int i = 1; i < 2000; ++i)
                worst = std::min(worst, fn(p.jet(kPi * i / 2000.0), n));
            return worst;
        },
        [&](const cex::BumpsDomain& b) {
            const auto p = b.cap_profile();
            double worst = std::numeric_limits<double>::infinity();
            // dense inside the cap, coarse over the untouched sphere
            const double r = b.spec.support();
            for (int i = 1; i <= 2000; ++i)
                worst = std::min(worst, fn(p.jet(r * i / 2001.0), n));
            for (int i = 1; i < 200; ++i)
                worst = std::min(worst, fn(p.jet(r + (kPi - r) * i / 200.0), n));
            return worst;
        });
}

std::vector<PrincipalCurvatures> shape_operator_fd(const SphereField& field, double step) {
    const SphereGrid& g = field.grid();
    std::vector<PrincipalCurvatures> out(std::size_t(g.Ltheta) * std::size_t(g.Lphi));

    quad::parallel_for(g.Ltheta, [&](int j) {
        for (int i = 0; i < g.Lphi; ++i) {
            const Eigen::Vector3d p =
                sphere::sphere_point(g.theta[std::size_t(j)], g.phi[std::size_t(i)]);
            Eigen::Vector3d helper = (std::abs(p[2]) < 0.9) ? Eigen::Vector3d::UnitZ()
                                                            : Eigen::Vector3d::UnitX();
            const Eigen::Vector3d t1 = helper.cross(p).normalized();
            const Eigen::Vector3d t2 = p.cross(t1);

            auto X = [&](double a, double b) -> Eigen::Vector3d {
                const Eigen::Vector3d x =
                    std::cos(b) * (std::cos(a) * p + std::sin(a) * t1) + std::sin(b) * t2;
                double th, ph;
                sphere::sphere_angles(x, th, ph);
                return (1.0 + field.value_at(th, ph)) * x;
            };

            const double h = step;
            auto d1 = [&](auto f) { // 4th-order first derivative
                return (-f(2.0) + 8.0 * f(1.0) - 8.0 * f(-1.0) + f(-2.0)) / (12.0 * h);
            };
            auto d2 = [&](auto f) { // 4th-order second derivative
                return (-f(2.0) + 16.0 * f(1.0) - 30.0 * f(0.0) + 16.0 * f(-1.0) - f(-2.0)) /
                       (12.0 * h * h);
            };

            const Eigen::Vector3d Xa = d1([&](double s) { return X(s * h, 0.0); });
            const Eigen::Vector3d Xb = d1([&](double s) { return X(0.0, s * h); });
            const Eigen::Vector3d Xaa = d2([&](double s) { return X(s * h, 0.0); });
            const Eigen::Vector3d Xbb = d2([&](double s) { return X(0.0, s * h); });
            auto cross2 = [&](double hh) {
                return (X(hh, hh) + X(-hh, -hh) - X(hh, -hh) - X(-hh, hh)) / (4.0 * hh * hh);
            };
            const Eigen::Vector3d Xab = (4.0 * cross2(h) - cross2(2.0 * h)) / 3.0;

            Eigen::Vector3d nu = Xa.cross(Xb).normalized();
            if (nu.dot(p) < 0) nu = -nu;

            Eigen::Matrix2d I, II;
            I << Xa.dot(Xa), Xa.dot(Xb), Xa.dot(Xb), Xb.dot(Xb);
            // second fundamental form against the inward normal, so that the
            // unit sphere has principal curvatures +1
            II << -Xaa.dot(nu), -Xab.dot(nu), -Xab.dot(nu), -Xbb.dot(nu);
            const Eigen::Matrix2d S = I.inverse() * II;
            const double tr = S.trace(), det = S.determinant();
            const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
            out[g.node(j, i)] = {tr / 2.0 + disc, tr / 2.0 - disc};
        }
    });
    return out;
}

AfRatio af_ratio(const Domain& d, int k) {
    const int n = d.n();
    AfRatio out;
    const double Ik = curvature_integral(d, k);
    if (Ik <= 0.0) {
        out.ratio = std::numeric_limits<double>::quiet_NaN();
        out.valid = false;
        return out;
    }
    const double vol = volume_and_barycenter(d).volume;
    const double ik_ball = dbinom(n, k) * quad::sphere_area(n);
    out.ratio = std::pow(Ik / ik_ball, 1.0 / (n + 1 - k)) /
                std::pow(vol / quad::ball_volume(n + 1), 1.0 / (n + 1));
    out.valid = true;
    return out;
}

SphereField ellipsoid_field(std::shared_ptr<const SphereGrid> grid, double ax, double ay,
                            double az) {
    return SphereField::from_function(std::move(grid), [=](double th, double ph) {
        const Eigen::Vector3d x = sphere::sphere_point(th, ph);
        const double q = x[0] * x[0] / (ax * ax) + x[1] * x[1] / (ay * ay) +
                         x[2] * x[2] / (az * az);
        return 1.0 / std::sqrt(q) - 1.0;
    });
}

} // namespace quermass::geom
