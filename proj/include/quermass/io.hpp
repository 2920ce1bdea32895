#pragma once

#include "quermass/combinatorics.hpp"
#include "quermass/spheregeom.hpp"
#include "quermass/stability.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace quermass::io {

using json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
    int line = 0;
    ParseError(const std::string& msg, int line_no)
        : std::runtime_error(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

/// Grid field from a plain-text file: either "theta_index phi_index value"
/// sample rows or "l m re im" spectral rows, with an optional
/// "# grid Ltheta Lphi lmax" header.
sphere::SphereField load_field(const std::string& path);

/// Profile from "theta V" rows (uniform grid over [0, pi]) if `source` names
/// a file, otherwise from the trig-polynomial expression grammar.
axisym::AxisProfile load_profile(const std::string& source, int n);

/// Built-in named domains: ball, ball:<radius>, zonal:<l>:<amp>,
/// bumps:<eps>:<kappa>; anything else is read as a field or profile file.
geom::Domain parse_domain_spec(const std::string& spec, int n);

json to_json(const stability::DeficitReport& rep);
json to_json(const std::vector<comb::IdentityRecord>& recs);

void write_text(const std::string& path, const std::string& content);

} // namespace quermass::io
