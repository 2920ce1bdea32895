#include "quermass/axisym.hpp"

#include "quermass/quadrature.hpp"
#include "quermass/symfun.hpp"
#include "quermass/zonal.hpp"

#include <boost/math/interpolators/cardinal_quintic_b_spline.hpp>

#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

namespace quermass::axisym {

using quad::dbinom;

AxisProfile::AxisProfile(int n, Fn v, Fn dv, Fn d2v, std::string desc)
    : n_(n), v_(std::move(v)), dv_(std::move(dv)), d2v_(std::move(d2v)), desc_(std::move(desc)) {
    if (n < 2) throw std::invalid_argument("AxisProfile: need n >= 2");
}

AxisProfile AxisProfile::zero(int n) { return constant(n, 0.0); }

AxisProfile AxisProfile::constant(int n, double c) {
    return AxisProfile(
        n, [c](double) { return c; }, [](double) { return 0.0; }, [](double) { return 0.0; },
        "const:" + std::to_string(c));
}

AxisProfile AxisProfile::trig(int n, const std::vector<TrigTerm>& terms) {
    auto v = [terms](double t) {
        double s = 0;
        for (const auto& tm : terms)
            s += tm.coef * (tm.is_sin ? std::sin(tm.j * t) : std::cos(tm.j * t));
        return s;
    };
    auto dv = [terms](double t) {
        double s = 0;
        for (const auto& tm : terms)
            s += tm.coef * tm.j * (tm.is_sin ? std::cos(tm.j * t) : -std::sin(tm.j * t));
        return s;
    };
    auto d2v = [terms](double t) {
        double s = 0;
        for (const auto& tm : terms)
            s -= tm.coef * tm.j * tm.j * (tm.is_sin ? std::sin(tm.j * t) : std::cos(tm.j * t));
        return s;
    };
    std::ostringstream os;
    os << "trig:";
    for (const auto& tm : terms)
        os << (tm.coef >= 0 ? "+" : "") << tm.coef << "*" << (tm.is_sin ? "sin" : "cos") << "("
           << tm.j << "t)";
    return AxisProfile(n, v, dv, d2v, os.str());
}

AxisProfile AxisProfile::zonal(int n, int l, double amp) {
    return zonal_series(n, [&] {
        std::vector<double> c(std::size_t(l) + 1, 0.0);
        c[std::size_t(l)] = amp;
        return c;
    }());
}

AxisProfile AxisProfile::zonal_series(int n, const std::vector<double>& coeffs) {
    auto eval = [n, coeffs](double t, int deriv) {
        double s = 0;
        for (int l = 0; l < int(coeffs.size()); ++l) {
            const double c = coeffs[std::size_t(l)];
            if (c == 0.0) continue;
            auto z = zonal::zonal_harmonic(n, l, t);
            s += c * (deriv == 0 ? z.value : deriv == 1 ? z.d1 : z.d2);
        }
        return s;
    };
    std::ostringstream os;
    os << "zonal_series:n=" << n << ":[";
    for (std::size_t i = 0; i < coeffs.size(); ++i) os << (i ? "," : "") << coeffs[i];
    os << "]";
    return AxisProfile(
        n, [eval](double t) { return eval(t, 0); }, [eval](double t) { return eval(t, 1); },
        [eval](double t) { return eval(t, 2); }, os.str());
}

AxisProfile AxisProfile::from_samples(int n, const std::vector<double>& values) {
    if (values.size() < 10) throw std::invalid_argument("from_samples: too few samples");
    const double h = std::numbers::pi / double(values.size() - 1);
    // one-sided second differences for the endpoint curvature of the spline
    auto d2 = [&](bool left) {
        const auto& y = values;
        const std::size_t m = y.size();
        return left ? (2 * y[0] - 5 * y[1] + 4 * y[2] - y[3]) / (h * h)
                    : (2 * y[m - 1] - 5 * y[m - 2] + 4 * y[m - 3] - y[m - 4]) / (h * h);
    };
    using Spline = boost::math::interpolators::cardinal_quintic_b_spline<double>;
    auto sp = std::make_shared<Spline>(values.data(), values.size(), 0.0, h,
                                       std::make_pair(0.0, d2(true)),
                                       std::make_pair(0.0, d2(false)));
    return AxisProfile(
        n, [sp](double t) { return (*sp)(t); }, [sp](double t) { return sp->prime(t); },
        [sp](double t) { return sp->double_prime(t); },
        "spline:" + std::to_string(values.size()));
}

namespace {

struct Token {
    enum Kind { Number, Ident, Plus, Minus, Star, LParen, RParen, End } kind;
    double num = 0;
    std::string text;
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t end = i;
            while (end < s.size() &&
                   (std::isdigit(static_cast<unsigned char>(s[end])) || s[end] == '.' ||
                    s[end] == 'e' || s[end] == 'E' ||
                    ((s[end] == '+' || s[end] == '-') && (s[end - 1] == 'e' || s[end - 1] == 'E'))))
                ++end;
            out.push_back({Token::Number, std::stod(s.substr(i, end - i)), ""});
            i = end;
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = i;
            while (end < s.size() && std::isalpha(static_cast<unsigned char>(s[end]))) ++end;
            out.push_back({Token::Ident, 0, s.substr(i, end - i)});
            i = end;
        } else {
            Token::Kind k;
            switch (c) {
                case '+': k = Token::Plus; break;
                case '-': k = Token::Minus; break;
                case '*': k = Token::Star; break;
                case '(': k = Token::LParen; break;
                case ')': k = Token::RParen; break;
                default: throw std::invalid_argument(std::string("profile expression: bad character '") + c + "'");
            }
            out.push_back({k, 0, ""});
            ++i;
        }
    }
    out.push_back({Token::End, 0, ""});
    return out;
}

} // namespace

AxisProfile AxisProfile::parse(int n, const std::string& expr) {
    // grammar: expr := ['+'|'-'] term (('+'|'-') term)*
    //          term := number ['*' trig] | trig
    //          trig := ('cos'|'sin') '(' [int '*'] 'theta' ')'
    auto toks = tokenize(expr);
    std::size_t pos = 0;
    auto peek = [&]() -> const Token& { return toks[pos]; };
    auto next = [&]() -> const Token& { return toks[pos++]; };

    std::vector<TrigTerm> terms;
    double sign = 1.0;
    if (peek().kind == Token::Plus) next();
    else if (peek().kind == Token::Minus) { sign = -1.0; next(); }

    while (true) {
        double coef = sign;
        bool have_trig = false;
        TrigTerm term;
        if (peek().kind == Token::Number) coef *= next().num;
        if (peek().kind == Token::Star) next();
        if (peek().kind == Token::Ident) {
            const std::string name = next().text;
            if (name != "cos" && name != "sin")
                throw std::invalid_argument("profile expression: unknown function '" + name + "'");
            term.is_sin = (name == "sin");
            if (next().kind != Token::LParen)
                throw std::invalid_argument("profile expression: expected '('");
            int freq = 1;
            if (peek().kind == Token::Number) {
                freq = int(next().num);
                if (next().kind != Token::Star)
                    throw std::invalid_argument("profile expression: expected '*' inside trig argument");
            }
            if (peek().kind != Token::Ident || next().text != "theta")
                throw std::invalid_argument("profile expression: expected 'theta'");
            if (next().kind != Token::RParen)
                throw std::invalid_argument("profile expression: expected ')'");
            term.j = freq;
            have_trig = true;
        }
        term.coef = coef;
        if (!have_trig) term.j = 0; // plain constant
        terms.push_back(term);

        if (peek().kind == Token::End) break;
        if (peek().kind == Token::Plus) { sign = 1.0; next(); }
        else if (peek().kind == Token::Minus) { sign = -1.0; next(); }
        else throw std::invalid_argument("profile expression: expected '+' or '-'");
    }
    return trig(n, terms);
}

PointJet AxisProfile::jet(double theta) const {
    PointJet j;
    j.u = v_(theta);
    j.grad = Eigen::VectorXd::Zero(n_);
    j.grad[0] = dv_(theta);
    const double s = std::sin(theta);
    double tangential;
    if (std::abs(s) < 1e-12) {
        tangential = d2v_(theta); // cot(theta) V' -> V'' at the poles
    } else {
        tangential = dv_(theta) * std::cos(theta) / s;
    }
    j.hess = SymMatrix(n_);
    j.hess.set(0, 0, d2v_(theta));
    for (int i = 1; i < n_; ++i) j.hess.set(i, i, tangential);
    return j;
}

void AxisProfile::validate() const {
    const double h = 1e-6;
    if (std::abs((v_(h) - v_(0.0)) / h) > 1e-3 || std::abs(dv_(0.0)) > 1e-9)
        throw std::invalid_argument("AxisProfile: V'(0) must vanish");
    if (std::abs((v_(std::numbers::pi) - v_(std::numbers::pi - h)) / h) > 1e-3 ||
        std::abs(dv_(std::numbers::pi)) > 1e-9)
        throw std::invalid_argument("AxisProfile: V'(pi) must vanish");
    for (int i = 0; i <= 2000; ++i) {
        const double t = std::numbers::pi * i / 2000.0;
        if (1.0 + v_(t) <= 0.0)
            throw std::invalid_argument("AxisProfile: 1 + V must stay positive");
    }
}

double coarea_integral(const std::function<double(double)>& f, int n, double abs_tol) {
    const double ring = quad::sphere_area(n - 1);
    return ring * quad::integrate(
                      [&](double t) { return f(t) * std::pow(std::sin(t), n - 1); }, 0.0,
                      std::numbers::pi, abs_tol);
}

double sigma_k_D2u(const AxisProfile& p, double theta, int k, Convention c) {
    const int n = p.n();
    if (k < 1 || k > n) throw std::invalid_argument("sigma_k_D2u: need 1 <= k <= n");
    if (theta <= 0.0 || theta >= std::numbers::pi)
        throw std::invalid_argument("sigma_k_D2u: theta must lie strictly inside (0, pi)");
    const double ct = std::cos(theta) / std::sin(theta);
    const double vp = p.dV(theta);
    const double vpp = p.d2V(theta);
    if (c == Convention::eq812) {
        return dbinom(n - 1, k - 1) * std::pow(ct, k - 1) * vpp * std::pow(vp, k - 1)
             + dbinom(n - 1, k - 2) * std::pow(ct, k - 2) * std::pow(vp, k)
             + dbinom(n - 1, k) * std::pow(ct, k) * std::pow(vp, k);
    }
    return dbinom(n - 1, k - 1) * vpp * std::pow(ct * vp, k - 1)
         + dbinom(n - 1, k) * std::pow(ct * vp, k);
}

double sigma_k_h(const AxisProfile& p, double theta, int k) {
    return quermass::sigma_k_h(p.jet(theta), k, p.n());
}

double curvature_integral(const AxisProfile& p, int k, Part part, double abs_tol) {
    const int n = p.n();
    if (k < 0 || k > n) throw std::invalid_argument("curvature_integral: k out of range");
    const double scale = std::max(1.0, dbinom(n, k) * quad::sphere_area(n));
    return coarea_integral(
        [&](double t) {
            const PointJet j = p.jet(t);
            double s = quermass::sigma_k_h(j, k, n);
            if (part == Part::positive) s = std::max(0.0, s);
            else if (part == Part::negative) s = std::max(0.0, -s);
            return s * area_element(j, n);
        },
        n, abs_tol * scale);
}

VolumeBarycenter volume_and_barycenter(const AxisProfile& p) {
    const int n = p.n();
    VolumeBarycenter out;
    out.volume = coarea_integral(
                     [&](double t) { return std::pow(1.0 + p.V(t), n + 1); }, n, 1e-13) /
                 (n + 1);
    const double moment = coarea_integral(
        [&](double t) { return std::cos(t) * std::pow(1.0 + p.V(t), n + 2) / (n + 2); }, n,
        1e-13);
    out.barycenter_axis = moment / out.volume;
    return out;
}

namespace {

AxisProfile rescaled(const AxisProfile& p, double s) {
    // V -> s(1+V) - 1 keeps the closure form
    auto v = [p, s](double t) { return s * (1.0 + p.V(t)) - 1.0; };
    auto dv = [p, s](double t) { return s * p.dV(t); };
    auto d2v = [p, s](double t) { return s * p.d2V(t); };
    return AxisProfile(p.n(), v, dv, d2v, p.description() + "|scaled");
}

AxisProfile translated(const AxisProfile& p, double t_axis, int samples) {
    std::vector<double> vals(std::size_t(samples), 0.0);
    for (int i = 0; i < samples; ++i) {
        const double theta = std::numbers::pi * i / double(samples - 1);
        const double cx = std::cos(theta), sx = std::sin(theta);
        double r = 1.0 + p.V(theta);
        for (int it = 0; it < 80; ++it) {
            const double px = r * cx + t_axis, py = r * sx;
            const double tp = std::atan2(py, px);
            const double rho = 1.0 + p.V(tp);
            const double rn = std::hypot(rho * std::cos(tp) - t_axis, rho * std::sin(tp));
            if (std::abs(rn - r) < 1e-15 * std::max(1.0, r)) { r = rn; break; }
            r = rn;
        }
        vals[std::size_t(i)] = r - 1.0;
    }
    return AxisProfile::from_samples(p.n(), vals);
}

} // namespace

AxisProfile normalize(const AxisProfile& p, const NormalizeOptions& opt) {
    const int n = p.n();
    const bool by_area = opt.target == NormalizeOptions::Target::area;
    const double target = by_area ? quad::sphere_area(n) : quad::ball_volume(n + 1);
    auto measure = [&](const AxisProfile& q) {
        return by_area ? curvature_integral(q, 0) : volume_and_barycenter(q).volume;
    };
    AxisProfile cur = p;
    for (int round = 0; round < opt.max_rounds; ++round) {
        const double s = std::pow(target / measure(cur), by_area ? 1.0 / n : 1.0 / (n + 1));
        if (std::abs(s - 1.0) > 1e-15) cur = rescaled(cur, s);
        const VolumeBarycenter vb = volume_and_barycenter(cur);
        if (std::abs(vb.barycenter_axis) <= opt.bar_abs_tol) {
            if (std::abs(measure(cur) - target) <= opt.vol_rel_tol * target) return cur;
        } else {
            cur = translated(cur, vb.barycenter_axis, opt.spline_samples);
        }
    }
    throw std::runtime_error("normalize: did not converge");
}

HighestTermIntegral highest_term_integral(const AxisProfile& p, int k) {
    const int n = p.n();
    if (k < 1 || k >= n) throw std::invalid_argument("highest_term_integral: need 1 <= k < n");
    HighestTermIntegral out;
    const double sgn_direct = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^{k+1}
    const double c = dbinom(n - 1, k - 1);
    out.direct = sgn_direct * (c / k) *
                 quad::integrate(
                     [&](double t) {
                         return std::pow(p.dV(t), k + 1) * p.d2V(t) *
                                std::pow(std::cos(t), k - 1) * std::pow(std::sin(t), n - k);
                     },
                     0.0, std::numbers::pi, 1e-13);
    const double sgn_parts = (k % 2 == 0) ? 1.0 : -1.0;   // (-1)^k
    out.by_parts = sgn_parts * (c / (k * (k + 2.0))) *
                   quad::integrate(
                       [&](double t) {
                           const double w_t =
                               (n - k) * std::pow(std::cos(t), k) * std::pow(std::sin(t), n - k - 1) -
                               (k - 1) * std::pow(std::cos(t), k - 2) * std::pow(std::sin(t), n - k + 1);
                           return std::pow(p.dV(t), k + 2) * w_t;
                       },
                       0.0, std::numbers::pi, 1e-13);
    return out;
}

FrequencyCutoff frequency_cutoff_theta0(double epsilon, int k) {
    if (epsilon <= 0.0 || epsilon >= 1.0)
        throw std::invalid_argument("frequency_cutoff_theta0: need epsilon in (0,1)");
    if (k < 1) throw std::invalid_argument("frequency_cutoff_theta0: need k >= 1");
    FrequencyCutoff out;
    out.theta0 = std::pow(epsilon, 1.0 - 1.0 / k);
    out.degenerate = (k == 1);
    return out;
}

double derivative_identity_residual(const AxisProfile& p, int m,
                                    const std::vector<double>& theta_grid) {
    const int n = p.n();
    if (m < 1 || m > n - 1)
        throw std::invalid_argument("derivative_identity_residual: need 1 <= m <= n-1");
    const double base = dbinom(n - 1, m - 1) / m;

    auto summed = [&](double t) {
        const double up = p.dV(t);
        double s = 0;
        for (int j = 1; j <= m; ++j) {
            const double sgn = ((m - j) % 2 == 0) ? 1.0 : -1.0;
            s += sgn * base * dbinom(m, m - j) * std::pow(up, j) *
                 std::pow(std::sin(t), n - j) * std::pow(std::cos(t), j - 1);
        }
        return s;
    };

    auto expanded = [&](double t) {
        const double up = p.dV(t), upp = p.d2V(t);
        const double st = std::sin(t), ct = std::cos(t);
        double s = 0;
        for (int j = 1; j <= m; ++j) {
            const double sgn = ((m - j) % 2 == 0) ? 1.0 : -1.0;
            double inner = j * std::pow(up, j - 1) * upp * std::pow(st, n - j) * std::pow(ct, j - 1)
                         + (n - j) * std::pow(up, j) * std::pow(st, n - j - 1) * std::pow(ct, j);
            if (j >= 2)
                inner -= (j - 1) * std::pow(up, j) * std::pow(st, n - j + 1) * std::pow(ct, j - 2);
            s += sgn * base * dbinom(m, m - j) * inner;
        }
        return s;
    };

    const double h = 1e-3;
    double worst = 0;
    for (double t : theta_grid) {
        if (t < 2 * h + 1e-3 || t > std::numbers::pi - 2 * h - 1e-3) continue;
        const double d = (-summed(t + 2 * h) + 8 * summed(t + h) - 8 * summed(t - h) +
                          summed(t - 2 * h)) / (12 * h);
        worst = std::max(worst, std::abs(d - expanded(t)));
    }
    return worst;
}

double dirichlet_energy(const AxisProfile& p) {
    return coarea_integral([&](double t) { const double d = p.dV(t); return d * d; }, p.n(), 1e-13);
}

double l2_norm2(const AxisProfile& p) {
    return coarea_integral([&](double t) { const double v = p.V(t); return v * v; }, p.n(), 1e-13);
}

double c1_norm(const AxisProfile& p) {
    double worst = 0;
    for (int i = 0; i <= 4000; ++i) {
        const double t = std::numbers::pi * i / 4000.0;
        worst = std::max({worst, std::abs(p.V(t)), std::abs(p.dV(t))});
    }
    return worst;
}

} // namespace quermass::axisym
