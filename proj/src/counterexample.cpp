#include "quermass/counterexample.hpp"

#include "quermass/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace quermass::cex {

using quad::dbinom;

namespace {

constexpr double kPi = std::numbers::pi;

// C^2 ramp on [0,1]: 0 on [0,1/4], quintic smoothstep up to 1 at 1/2,
// 1 on [1/2,3/4], back down to 0 at 15/16 and beyond.
constexpr double kUp0 = 0.25, kUp1 = 0.5, kDown0 = 0.75, kDown1 = 0.9375;

double smoothstep(double t) { return t * t * t * (10.0 + t * (-15.0 + 6.0 * t)); }
double smoothstep_d(double t) { return 30.0 * t * t * (1.0 - t) * (1.0 - t); }
// antiderivative of the quintic smoothstep, zero at t = 0
double smoothstep_I(double t) {
    return t * t * t * t * (2.5 + t * (-3.0 + t));
}

double ramp(double s) {
    if (s <= kUp0 || s >= kDown1) return 0.0;
    if (s < kUp1) return smoothstep((s - kUp0) / (kUp1 - kUp0));
    if (s <= kDown0) return 1.0;
    return smoothstep((kDown1 - s) / (kDown1 - kDown0));
}

double ramp_d(double s) {
    if (s <= kUp0 || s >= kDown1) return 0.0;
    if (s < kUp1) return smoothstep_d((s - kUp0) / (kUp1 - kUp0)) / (kUp1 - kUp0);
    if (s <= kDown0) return 0.0;
    return -smoothstep_d((kDown1 - s) / (kDown1 - kDown0)) / (kDown1 - kDown0);
}

// int_0^s ramp
double ramp_I(double s) {
    auto up_I = [&](double t) { return (kUp1 - kUp0) * smoothstep_I(t); };
    const double up_full = up_I(1.0);
    const double down_full = (kDown1 - kDown0) * smoothstep_I(1.0);
    if (s <= kUp0) return 0.0;
    if (s < kUp1) return up_I((s - kUp0) / (kUp1 - kUp0));
    if (s <= kDown0) return up_full + (s - kUp1);
    if (s < kDown1)
        return up_full + (kDown0 - kUp1) + down_full -
               (kDown1 - kDown0) * smoothstep_I((kDown1 - s) / (kDown1 - kDown0));
    return up_full + (kDown0 - kUp1) + down_full;
}

} // namespace

double BumpSpec::fp(double r) const {
    const double s = r * kappa;
    if (s >= 1.0) return 0.0;
    return 0.5 * epsilon * ramp(s);
}

double BumpSpec::fpp(double r) const {
    const double s = r * kappa;
    if (s >= 1.0) return 0.0;
    return 0.5 * epsilon * kappa * ramp_d(s);
}

double BumpSpec::f(double r) const {
    const double s = std::min(1.0, r * kappa);
    // f(r) = -int_r^{1/kappa} f' = -(eps/(2 kappa)) (int_0^1 S - int_0^s S)
    return -0.5 * epsilon / kappa * (ramp_I(1.0) - ramp_I(s));
}

BumpSpec make_bump(double epsilon, double kappa) {
    if (epsilon <= 0.0 || epsilon >= 1.0)
        throw std::invalid_argument("make_bump: epsilon must lie in (0,1)");
    if (kappa < 4.0) throw std::invalid_argument("make_bump: kappa must be at least 4");
    BumpSpec spec{epsilon, kappa};
    const double half = 0.5 * epsilon;
    for (int i = 0; i <= 10000; ++i) {
        const double r = spec.support() * i / 10000.0;
        const double fv = spec.f(r), fpv = spec.fp(r);
        if (!(fv <= 1e-15 && fv >= -half - 1e-15))
            throw std::logic_error("make_bump: profile bound violated");
        if (!(fpv >= -1e-15 && fpv <= half + 1e-15))
            throw std::logic_error("make_bump: slope bound violated");
        const double s = r * kappa;
        if (s >= 0.5 && s <= 0.75 && std::abs(fpv - half) > 1e-12)
            throw std::logic_error("make_bump: plateau value violated");
    }
    if (std::abs(spec.f(spec.support())) > 1e-15)
        throw std::logic_error("make_bump: profile must vanish at the support radius");
    return spec;
}

RadialSigma radial_sigma_flat(const BumpSpec& spec, double r, int k, int n) {
    if (k < 1 || k > n) throw std::invalid_argument("radial_sigma_flat: k out of range");
    RadialSigma out;
    double ratio; // f'(r)/r with the removable limit at r = 0
    if (r <= 0.0) {
        ratio = spec.fpp(0.0); // f'(0) = 0 by construction
        r = 0.0;
    } else {
        ratio = spec.fp(r) / r;
    }
    out.product_form = dbinom(n - 1, k - 1) * spec.fpp(r) * std::pow(ratio, k - 1) +
                       dbinom(n - 1, k) * std::pow(ratio, k);
    // ((r^{n-k}/k)(f')^k)' expanded by the product rule
    out.divergence_form = dbinom(n - 1, k - 1) *
                          (double(n - k) / k * std::pow(ratio, k) +
                           spec.fpp(r) * std::pow(ratio, k - 1));
    return out;
}

DirichletSigma dirichlet_sigma_integral(const BumpSpec& spec, int k, int n) {
    if (k >= n) throw std::invalid_argument("dirichlet_sigma_integral: need k < n");
    if (k < 1) throw std::invalid_argument("dirichlet_sigma_integral: need k >= 1");
    DirichletSigma out;
    const double R = spec.support();
    const double coef = dbinom(n - 1, k - 1) * (n - k) * 2.0 / (double(k) * (k + 2));
    const double scale =
        coef * std::pow(0.5 * spec.epsilon, k + 2) * std::pow(R, n - k) / (n - k);
    out.by_parts = coef * quad::integrate(
                              [&](double r) {
                                  return std::pow(r, n - k - 1) * std::pow(spec.fp(r), k + 2);
                              },
                              0.0, R, 1e-12 * scale);
    out.direct = quad::integrate(
        [&](double r) {
            const double fp = spec.fp(r);
            return fp * fp * radial_sigma_flat(spec, r, k, n).product_form * std::pow(r, n - 1);
        },
        0.0, R, 1e-12 * scale);
    const double half = 0.5 * spec.epsilon;
    out.plateau_bound = coef * std::pow(half, k + 2) *
                        (std::pow(0.75, n - k) - std::pow(0.5, n - k)) *
                        std::pow(spec.kappa, k - n) / (n - k);
    return out;
}

PackedBumps pack_caps(int n, double kappa, PackMode mode, std::uint64_t seed) {
    if (kappa < 4.0) throw std::invalid_argument("pack_caps: kappa must be at least 4");
    PackedBumps out;
    out.n = n;
    out.kappa = kappa;
    // covering bound: caps of geodesic radius 2/kappa around a maximal
    // separated set cover S^n, so q >= |S^n| / |cap| >= c_n kappa^n
    out.packing_constant =
        double(n) * quad::sphere_area(n) / (std::pow(2.0, n) * quad::sphere_area(n - 1));
    out.q = long(std::floor(out.packing_constant * std::pow(kappa, n)));
    if (out.q < 1) out.q = 1;
    if (mode == PackMode::count) return out;

    if (n > 3 || kappa > 32.0) {
        // greedy placement is a demonstration tool at small scale only
        out.greedy = false;
        return out;
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double min_dist = 2.0 / kappa;
    std::vector<Eigen::VectorXd> pts;
    long consecutive_rejects = 0;
    const long reject_cap = 20000;
    while (long(pts.size()) < out.q && consecutive_rejects < reject_cap) {
        Eigen::VectorXd x(n + 1);
        for (int i = 0; i <= n; ++i) x[i] = gauss(rng);
        x.normalize();
        bool ok = true;
        for (const auto& y : pts)
            if ((x - y).norm() < min_dist) { ok = false; break; }
        if (ok) {
            pts.push_back(std::move(x));
            consecutive_rejects = 0;
        } else {
            ++consecutive_rejects;
        }
    }
    if (pts.empty()) {
        out.greedy = false; // fall back to the counting bound
        return out;
    }
    out.greedy = true;
    out.q = long(pts.size());
    out.centers = std::move(pts);
    return out;
}

axisym::AxisProfile BumpsDomain::cap_profile() const {
    const BumpSpec s = spec;
    return axisym::AxisProfile(
        n, [s](double t) { return s.f(t); }, [s](double t) { return s.fp(t); },
        [s](double t) { return s.fpp(t); },
        "bump_cap:eps=" + std::to_string(s.epsilon) + ":kappa=" + std::to_string(s.kappa));
}

double BumpsDomain::cap_area() const {
    return quad::sphere_area(n - 1) *
           quad::integrate([&](double t) { return std::pow(std::sin(t), n - 1); }, 0.0,
                           spec.support(), 1e-15);
}

double cap_curvature_integral(const BumpsDomain& b, int k, axisym::Part part) {
    const auto p = b.cap_profile();
    const int n = b.n;
    const double ring = quad::sphere_area(n - 1);
    auto integrand = [&](double t) {
        const PointJet j = p.jet(t);
        double s = sigma_k_h(j, k, n);
        if (part == axisym::Part::positive) s = std::max(0.0, s);
        else if (part == axisym::Part::negative) s = std::max(0.0, -s);
        return s * area_element(j, n) * std::pow(std::sin(t), n - 1);
    };
    const double scale = dbinom(n, k) * b.cap_area() / ring + 1e-30;
    return ring * quad::integrate(integrand, 0.0, b.spec.support(), 1e-11 * scale);
}

double cap_dirichlet_energy(const BumpsDomain& b) {
    const int n = b.n;
    const double scale =
        std::pow(0.5 * b.spec.epsilon, 2) * std::pow(b.spec.support(), n) / n;
    return quad::sphere_area(n - 1) *
           quad::integrate(
               [&](double t) {
                   const double d = b.spec.fp(t);
                   return d * d * std::pow(std::sin(t), n - 1);
               },
               0.0, b.spec.support(), 1e-12 * scale);
}

double cap_l2_norm2(const BumpsDomain& b) {
    const int n = b.n;
    const double scale =
        std::pow(0.5 * b.spec.epsilon, 2) * std::pow(b.spec.support(), n) / n;
    return quad::sphere_area(n - 1) *
           quad::integrate(
               [&](double t) {
                   const double v = b.spec.f(t);
                   return v * v * std::pow(std::sin(t), n - 1);
               },
               0.0, b.spec.support(), 1e-12 * scale);
}

namespace {

// flat-space quadratic prediction for the per-cap deviation of the sigma_k
// integral: the u and u^2 area terms plus the gradient-sigma_m ladder
double per_cap_flat_prediction(const BumpsDomain& b, int k) {
    const int n = b.n;
    const double ring = quad::sphere_area(n - 1);
    const double R = b.spec.support();
    const double rtol = 1e-12 * std::pow(0.5 * b.spec.epsilon, 2) * std::pow(R, n) / n;
    auto rint = [&](const std::function<double(double)>& g) {
        return quad::integrate([&](double r) { return g(r) * std::pow(r, n - 1); }, 0.0, R,
                               rtol);
    };
    double total = dbinom(n, k) * (n - k) * ring * rint([&](double r) { return b.spec.f(r); });
    total += dbinom(n, k) * (n - k) * (n - k - 1) / 2.0 * ring *
             rint([&](double r) { return b.spec.f(r) * b.spec.f(r); });
    for (int m = 0; m <= k; ++m) {
        const double coef = dbinom(n - m, k - m) * double((n - k) * (k + 1)) /
                            double(2 * (m + 1) * (n - m));
        const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
        const double val =
            ring * rint([&](double r) {
                const double fp = b.spec.fp(r);
                const double sig =
                    (m == 0) ? 1.0 : radial_sigma_flat(b.spec, r, m, n).product_form;
                return fp * fp * sig;
            });
        total += sgn * coef * val;
    }
    return total;
}

} // namespace

CounterexampleResult assemble_counterexample(int n, int k, double epsilon, double kappa) {
    if (n < 2 || k < 1 || k > n) throw std::invalid_argument("assemble_counterexample: bad n, k");
    CounterexampleResult out;
    BumpsDomain b{n, make_bump(epsilon, kappa), pack_caps(n, kappa, PackMode::count).q};
    out.q = b.q;
    out.baseline = dbinom(n, k) * quad::sphere_area(n);
    const double cap_int = cap_curvature_integral(b, k, axisym::Part::signed_part);
    out.per_cap_exact = cap_int - dbinom(n, k) * b.cap_area();
    out.per_cap_flat = per_cap_flat_prediction(b, k);
    out.I_k = dbinom(n, k) * (quad::sphere_area(n) - double(b.q) * b.cap_area()) +
              double(b.q) * cap_int;
    return out;
}

std::vector<SweepRow> kappa_sweep(int n, int k, double epsilon,
                                  const std::vector<double>& kappas) {
    std::vector<SweepRow> rows;
    rows.reserve(kappas.size());
    for (double kp : kappas) {
        const auto r = assemble_counterexample(n, k, epsilon, kp);
        rows.push_back({kp, r.q, r.I_k, r.baseline, r.I_k - r.baseline});
    }
    return rows;
}

} // namespace quermass::cex
