#include "quermass/stability.hpp"

#include "quermass/quadrature.hpp"
#include "quermass/symfun.hpp"

#include <cmath>

namespace quermass::stability {

using geom::Domain;
using quad::dbinom;

namespace {

void fill_parts(DeficitReport& rep, const Domain& dom, int k) {
    rep.sigma_signed.clear();
    rep.sigma_positive.clear();
    rep.sigma_negative.clear();
    for (int j = 1; j <= k; ++j) {
        rep.sigma_signed.push_back(geom::curvature_integral(dom, j, geom::Part::signed_part));
        rep.sigma_positive.push_back(geom::curvature_integral(dom, j, geom::Part::positive));
        rep.sigma_negative.push_back(geom::curvature_integral(dom, j, geom::Part::negative));
    }
    rep.I_k = rep.sigma_signed.back();
    rep.I_k_pos = rep.sigma_positive.back();
    rep.I_k_neg = rep.sigma_negative.back();
}

void fill_energy(DeficitReport& rep, const Domain& dom) {
    rep.dirichlet = geom::dirichlet_energy(dom);
    rep.ratio_defined = rep.dirichlet > 0;
    rep.ratio = rep.ratio_defined ? rep.deficit / rep.dirichlet : 0.0;
}

void record_residuals(DeficitReport& rep, const Domain& dom) {
    if (std::holds_alternative<cex::BumpsDomain>(dom.rep)) return;
    const auto vb = geom::volume_and_barycenter(dom);
    rep.volume_residual =
        std::abs(vb.volume - quad::ball_volume(dom.n() + 1)) / quad::ball_volume(dom.n() + 1);
    rep.barycenter_residual = vb.barycenter.norm();
}

Domain ensure_normalized(const Domain& d, DeficitReport& rep,
                         geom::NormalizeOptions::Target target) {
    if (std::holds_alternative<cex::BumpsDomain>(d.rep)) {
        record_residuals(rep, d);
        return d;
    }
    const int n = d.n();
    double residual, bar;
    if (target == geom::NormalizeOptions::Target::area) {
        residual = std::abs(geom::area(d) - quad::sphere_area(n)) / quad::sphere_area(n);
        bar = geom::volume_and_barycenter(d).barycenter.norm();
    } else {
        const auto vb = geom::volume_and_barycenter(d);
        residual = std::abs(vb.volume - quad::ball_volume(n + 1)) / quad::ball_volume(n + 1);
        bar = vb.barycenter.norm();
    }
    if (residual <= 1e-9 && bar <= 1e-8) {
        rep.volume_residual = residual;
        rep.barycenter_residual = bar;
        return d;
    }
    geom::NormalizeOptions opt;
    opt.target = target;
    Domain out = geom::normalize(d, opt);
    rep.auto_normalized = true;
    record_residuals(rep, out);
    if (target == geom::NormalizeOptions::Target::area)
        rep.normalization_residual =
            std::abs(geom::area(out) - quad::sphere_area(n)) / quad::sphere_area(n);
    return out;
}

} // namespace

DeficitReport deficit_compensated(const Domain& domain, int k) {
    DeficitReport rep;
    rep.theorem = "compensated";
    rep.domain_kind = domain.kind();
    rep.n = domain.n();
    rep.k = k;
    const Domain dom = ensure_normalized(domain, rep, geom::NormalizeOptions::Target::volume);
    rep.baseline = dbinom(rep.n, k) * quad::sphere_area(rep.n);
    fill_parts(rep, dom, k);
    rep.compensated = rep.I_k;
    for (double neg : rep.sigma_negative) rep.compensated += neg;
    rep.deficit = rep.compensated - rep.baseline;
    fill_energy(rep, dom);
    rep.flags["in_theorem"] = (rep.n >= 5) && (k <= (rep.n - 1) / 2);
    return rep;
}

DeficitReport deficit_sigma2plus(const Domain& domain) {
    DeficitReport rep;
    rep.theorem = "sigma2plus";
    rep.domain_kind = domain.kind();
    rep.n = domain.n();
    rep.k = 2;
    const Domain dom = ensure_normalized(domain, rep, geom::NormalizeOptions::Target::volume);
    rep.baseline = dbinom(rep.n, 2) * quad::sphere_area(rep.n);
    fill_parts(rep, dom, 2);
    rep.compensated = rep.I_k_pos;
    rep.deficit = rep.I_k_pos - rep.baseline;
    fill_energy(rep, dom);
    // hypothesis -M <= Delta u <= n: the upper end is the binding one
    const double max_lap =
        -geom::min_over_domain(dom, [](const PointJet& j, int) { return -j.hess.trace(); });
    const double min_lap =
        geom::min_over_domain(dom, [](const PointJet& j, int) { return j.hess.trace(); });
    rep.flags["laplacian_upper"] = max_lap <= rep.n;
    rep.margins["laplacian_upper_margin"] = rep.n - max_lap;
    rep.margins["laplacian_min"] = min_lap;
    return rep;
}

DeficitReport deficit_thm12(const Domain& domain, int k, int jprime) {
    if (jprime < 0 || jprime % 2 != 0)
        throw std::invalid_argument("deficit_thm12: j' must be even and nonnegative");
    if (k <= jprime) throw std::invalid_argument("deficit_thm12: need k > j'");
    DeficitReport rep;
    rep.theorem = "ij_constrained";
    rep.domain_kind = domain.kind();
    rep.n = domain.n();
    rep.k = k;
    rep.jprime = jprime;
    const int n = rep.n;
    rep.baseline = dbinom(n, k) * quad::sphere_area(n);
    fill_parts(rep, domain, k);
    rep.compensated = rep.I_k;
    rep.deficit = rep.I_k - rep.baseline;
    fill_energy(rep, domain);
    record_residuals(rep, domain);
    rep.normalization_residual =
        geom::curvature_integral(domain, jprime) - dbinom(n, jprime) * quad::sphere_area(n);

    const double min_first = geom::min_over_domain(domain, [&](const PointJet& j, int nn) {
        const auto sig = sigma_h_upto(j, jprime, nn);
        double s = 0;
        for (int m = 1; m <= jprime; ++m)
            s += ((m % 2 == 0) ? 1.0 : -1.0) * sig[std::size_t(m)];
        return s;
    });
    const double min_second = geom::min_over_domain(domain, [&](const PointJet& j, int nn) {
        const auto sig = sigma_h_upto(j, k, nn);
        double s = 0;
        for (int m = jprime + 1; m <= k; ++m) {
            const double sgn = ((k - m) % 2 == 0) ? 1.0 : -1.0;
            s += (dbinom(nn, k + 1) / dbinom(nn, m) + sgn) * sig[std::size_t(m)];
        }
        return s;
    });
    rep.flags["pointwise_alternating_sum"] = min_first >= -1e-12;
    rep.flags["pointwise_ratio_sum"] = min_second >= -1e-12;
    rep.flags["in_theorem"] = (k % 2 == 0) && (k > n - jprime - 2) && (n >= 5);
    rep.margins["min_alternating_sum"] = min_first;
    rep.margins["min_ratio_sum"] = min_second;
    return rep;
}

DeficitReport deficit_thm14(const Domain& domain, int k, double delta) {
    if (delta <= 0) throw std::invalid_argument("deficit_thm14: delta must be positive");
    DeficitReport rep;
    rep.theorem = "area_constrained";
    rep.domain_kind = domain.kind();
    rep.n = domain.n();
    rep.k = k;
    rep.delta = delta;
    const Domain dom = ensure_normalized(domain, rep, geom::NormalizeOptions::Target::area);
    rep.normalization_residual =
        std::abs(geom::area(dom) - quad::sphere_area(rep.n)) / quad::sphere_area(rep.n);
    rep.baseline = dbinom(rep.n, k) * quad::sphere_area(rep.n);
    fill_parts(rep, dom, k);
    rep.compensated = rep.I_k;
    for (double neg : rep.sigma_negative) rep.compensated += neg;
    rep.deficit = rep.compensated - rep.baseline;
    fill_energy(rep, dom);
    rep.flags["above_minus_delta"] = rep.deficit >= -delta;
    rep.margins["margin_vs_delta"] = rep.deficit + delta;
    rep.flags["in_theorem"] = (rep.n >= 5) && (k < rep.n / 2);
    return rep;
}

DeficitReport hypothesis_predicates(const Domain& domain, int k) {
    DeficitReport rep;
    rep.theorem = "predicates";
    rep.domain_kind = domain.kind();
    rep.n = domain.n();
    rep.k = k;
    const int n = rep.n;
    rep.baseline = dbinom(n, k) * quad::sphere_area(n);
    record_residuals(rep, domain);

    bool k_convex = true;
    bool window = true;
    for (int m = 1; m <= k; ++m) {
        const double min_sigma = geom::min_over_domain(domain, [&](const PointJet& j, int nn) {
            return sigma_k_h(j, m, nn);
        });
        k_convex = k_convex && (min_sigma > 0);
        rep.margins["min_sigma_h_" + std::to_string(m)] = min_sigma;

        // (-1)^m sigma_m(D^2 u) >= (-1)^m C(n,m), as printed
        const double min_window = geom::min_over_domain(domain, [&](const PointJet& j, int nn) {
            const double sig = symfun::sigma_matrix(j.hess, m);
            const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
            return sgn * (sig - dbinom(nn, m));
        });
        window = window && (min_window >= 0);
        rep.margins["hessian_window_" + std::to_string(m)] = min_window;
    }
    rep.flags["k_convex"] = k_convex;
    rep.flags["hessian_window"] = window;

    fill_parts(rep, domain, k);
    rep.compensated = rep.I_k;
    rep.deficit = rep.I_k - rep.baseline;
    fill_energy(rep, domain);
    return rep;
}

namespace {

double expansion_integrand(const PointJet& jet, int n, int k, ExpansionRoute route) {
    const double lead = dbinom(n, k) * double((n - k) * (k + 1));
    const double grad2 = jet.grad_norm2();
    double total = lead / (2.0 * n) * grad2 - lead / 2.0 * jet.u * jet.u;
    const auto sig_u = symfun::sigma_all_matrix(jet.hess);
    std::vector<double> sig_h;
    if (route == ExpansionRoute::curvature) sig_h = sigma_h_upto(jet, k, n);
    for (int m = 1; m <= k; ++m) {
        const double coef = dbinom(n - m, k - m) * double((n - k) * (k + 1)) /
                            double(2 * (m + 1) * (n - m));
        const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
        double x;
        if (route == ExpansionRoute::hessian) {
            x = sig_u[std::size_t(m)];
        } else {
            // binomial-involution image: sigma_m(D^2 u) ~ sum_j (-1)^j C(n-j,m-j) sigma_j(h)
            x = 0;
            for (int j = 0; j <= m; ++j) {
                const double sj = ((j % 2 == 0) ? 1.0 : -1.0) * dbinom(n - j, m - j);
                x += sj * sig_h[std::size_t(j)];
            }
        }
        total += sgn * coef * grad2 * x;
    }
    return total;
}

} // namespace

double expansion_second_order(const Domain& domain, int k, ExpansionRoute route) {
    const int n = domain.n();
    if (k < 1 || k >= n) throw std::invalid_argument("expansion_second_order: need 1 <= k < n");
    const double scale = std::max(1.0, dbinom(n, k) * quad::sphere_area(n));
    if (const auto* f = std::get_if<sphere::SphereField>(&domain.rep)) {
        const auto jets = f->grid_jets();
        std::vector<double> vals(jets.size());
        for (std::size_t i = 0; i < jets.size(); ++i)
            vals[i] = expansion_integrand(jets[i], n, k, route);
        return sphere::integrate_grid(f->grid(), vals);
    }
    if (const auto* p = std::get_if<axisym::AxisProfile>(&domain.rep)) {
        return axisym::coarea_integral(
            [&](double t) { return expansion_integrand(p->jet(t), n, k, route); }, n,
            1e-13 * scale);
    }
    throw std::invalid_argument("expansion_second_order: field or profile domains only");
}

double exact_deficit(const Domain& domain, int k) {
    const int n = domain.n();
    return geom::curvature_integral(domain, k) - dbinom(n, k) * quad::sphere_area(n);
}

} // namespace quermass::stability
