#include "quermass/io.hpp"

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

namespace quermass::io {

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> toks;
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
}

double parse_number(const std::string& tok, int line_no) {
    try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ParseError("not a number: '" + tok + "'", line_no);
    }
}

long parse_int(const std::string& tok, int line_no) {
    const double v = parse_number(tok, line_no);
    const long i = long(std::llround(v));
    if (std::abs(v - double(i)) > 1e-12) throw ParseError("expected an integer: '" + tok + "'", line_no);
    return i;
}

} // namespace

sphere::SphereField load_field(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open field file: " + path);
    int Ltheta = 96, Lphi = 192, lmax = 64;
    std::string line;
    int line_no = 0;
    std::vector<std::array<double, 4>> rows;
    int row_width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto toks = split_tokens(line.substr(1));
            if (!toks.empty() && toks[0] == "grid") {
                if (toks.size() != 4) throw ParseError("grid header needs Ltheta Lphi lmax", line_no);
                Ltheta = int(parse_int(toks[1], line_no));
                Lphi = int(parse_int(toks[2], line_no));
                lmax = int(parse_int(toks[3], line_no));
            }
            continue;
        }
        auto toks = split_tokens(line);
        if (toks.size() != 3 && toks.size() != 4)
            throw ParseError("expected 3 (samples) or 4 (spectral) columns", line_no);
        if (row_width == 0) row_width = int(toks.size());
        if (int(toks.size()) != row_width)
            throw ParseError("mixed sample and spectral rows", line_no);
        std::array<double, 4> r{0, 0, 0, 0};
        for (std::size_t c = 0; c < toks.size(); ++c) r[c] = parse_number(toks[c], line_no);
        if (row_width == 3) {
            const long j = parse_int(toks[0], line_no), i = parse_int(toks[1], line_no);
            if (j < 0 || j >= Ltheta || i < 0 || i >= Lphi)
                throw ParseError("node index out of range", line_no);
        } else {
            const long l = parse_int(toks[0], line_no), m = parse_int(toks[1], line_no);
            if (l < 0 || l > lmax || m < -l || m > l)
                throw ParseError("spectral index out of range", line_no);
        }
        rows.push_back(r);
    }
    if (rows.empty()) throw ParseError("empty field file", line_no == 0 ? 1 : line_no);

    auto grid = sphere::SphereGrid::make(Ltheta, Lphi, lmax);
    if (row_width == 3) {
        std::vector<double> samples(std::size_t(Ltheta) * std::size_t(Lphi), 0.0);
        std::vector<char> seen(samples.size(), 0);
        for (const auto& r : rows) {
            const std::size_t id = grid->node(int(r[0]), int(r[1]));
            samples[id] = r[2];
            seen[id] = 1;
        }
        for (char s : seen)
            if (!s) throw std::runtime_error("field file does not cover the full grid");
        return sphere::SphereField::from_samples(std::move(grid), std::move(samples));
    }
    std::vector<double> coeffs(std::size_t(lmax + 1) * std::size_t(lmax + 1), 0.0);
    for (const auto& r : rows) {
        const int l = int(r[0]), m = int(r[1]);
        // m >= 0: re multiplies the cos(m phi) basis function, im the sin one
        if (m < 0) throw std::runtime_error("spectral rows use m >= 0 with re/im parts");
        coeffs[sphere::coeff_index(l, m, false)] = r[2];
        if (m > 0) coeffs[sphere::coeff_index(l, m, true)] = r[3];
    }
    return sphere::SphereField::from_coeffs(std::move(grid), std::move(coeffs));
}

axisym::AxisProfile load_profile(const std::string& source, int n) {
    if (!std::filesystem::exists(source)) return axisym::AxisProfile::parse(n, source);
    std::ifstream in(source);
    if (!in) throw std::runtime_error("cannot open profile file: " + source);
    std::vector<double> thetas, values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto toks = split_tokens(line);
        if (toks.size() != 2) throw ParseError("expected 'theta V' rows", line_no);
        thetas.push_back(parse_number(toks[0], line_no));
        values.push_back(parse_number(toks[1], line_no));
    }
    if (thetas.size() < 10) throw ParseError("too few profile samples", line_no);
    const double h = std::numbers::pi / double(thetas.size() - 1);
    for (std::size_t i = 0; i < thetas.size(); ++i)
        if (std::abs(thetas[i] - double(i) * h) > 1e-9)
            throw std::runtime_error("profile samples must be uniform over [0, pi]");
    return axisym::AxisProfile::from_samples(n, values);
}

geom::Domain parse_domain_spec(const std::string& spec, int n) {
    auto split_colon = [](const std::string& s) {
        std::vector<std::string> parts;
        std::size_t start = 0;
        while (true) {
            const std::size_t p = s.find(':', start);
            parts.push_back(s.substr(start, p - start));
            if (p == std::string::npos) break;
            start = p + 1;
        }
        return parts;
    };
    const auto parts = split_colon(spec);
    if (parts[0] == "ball") {
        const double r = parts.size() > 1 ? std::stod(parts[1]) : 1.0;
        return geom::make_ball(r, n);
    }
    if (parts[0] == "zonal") {
        if (parts.size() != 3) throw std::invalid_argument("zonal:<l>:<amp>");
        return geom::Domain{axisym::AxisProfile::zonal(n, std::stoi(parts[1]), std::stod(parts[2]))};
    }
    if (parts[0] == "bumps") {
        if (parts.size() != 3) throw std::invalid_argument("bumps:<eps>:<kappa>");
        const double eps = std::stod(parts[1]), kappa = std::stod(parts[2]);
        cex::BumpsDomain b{n, cex::make_bump(eps, kappa),
                           cex::pack_caps(n, kappa, cex::PackMode::count).q};
        return geom::Domain{b};
    }
    if (std::filesystem::exists(spec)) {
        // field files are 2-sphere grids; everything else parses as a profile
        std::ifstream in(spec);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            if (split_tokens(line).size() >= 3) return geom::Domain{load_field(spec)};
            break;
        }
        return geom::Domain{load_profile(spec, n)};
    }
    return geom::Domain{load_profile(spec, n)};
}

json to_json(const stability::DeficitReport& rep) {
    json j;
    j["theorem"] = rep.theorem;
    j["domain_kind"] = rep.domain_kind;
    j["n"] = rep.n;
    j["k"] = rep.k;
    if (rep.jprime) j["jprime"] = *rep.jprime;
    if (rep.delta) j["delta"] = *rep.delta;
    j["I_k"] = rep.I_k;
    j["I_k_pos"] = rep.I_k_pos;
    j["I_k_neg"] = rep.I_k_neg;
    j["sigma_signed"] = rep.sigma_signed;
    j["sigma_positive"] = rep.sigma_positive;
    j["sigma_negative"] = rep.sigma_negative;
    j["compensated"] = rep.compensated;
    j["baseline"] = rep.baseline;
    j["deficit"] = rep.deficit;
    j["dirichlet"] = rep.dirichlet;
    if (rep.ratio_defined) j["ratio"] = rep.ratio;
    else j["ratio"] = nullptr;
    j["flags"] = rep.flags;
    j["margins"] = rep.margins;
    j["volume_residual"] = rep.volume_residual;
    j["barycenter_residual"] = rep.barycenter_residual;
    j["normalization_residual"] = rep.normalization_residual;
    j["auto_normalized"] = rep.auto_normalized;
    return j;
}

json to_json(const std::vector<comb::IdentityRecord>& recs) {
    json arr = json::array();
    for (const auto& r : recs)
        arr.push_back(json{{"identity", r.identity},
                           {"params", r.params},
                           {"lhs", r.lhs},
                           {"rhs", r.rhs},
                           {"pass", r.pass}});
    return arr;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << content;
}

} // namespace quermass::io
