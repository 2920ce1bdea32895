#pragma once

#include "quermass/axisym.hpp"
#include "quermass/counterexample.hpp"
#include "quermass/sphere_field.hpp"

#include <variant>

namespace quermass::geom {

using Part = axisym::Part;

// Star-shaped domain (1+u)B given by a grid field (n = 2), an axisymmetric
// profile (any n), or a packed-bumps construction.
struct Domain {
    std::variant<sphere::SphereField, axisym::AxisProfile, cex::BumpsDomain> rep;

    int n() const;
    const char* kind() const;
};

Domain make_ball(double radius = 1.0, int n = 2);

/// integral of sigma_k(h) (or a signed part) against the graph area measure.
/// Grid domains are re-checked on a refined grid; disagreement beyond the
/// tolerance raises ResolutionError.
double curvature_integral(const Domain& d, int k, Part part = Part::signed_part);

struct VolumeBarycenter {
    double volume = 0;
    Eigen::VectorXd barycenter; // ambient, length n+1
};
VolumeBarycenter volume_and_barycenter(const Domain& d);

/// Surface area of the boundary, i.e. the k = 0 curvature integral.
double area(const Domain& d);

/// integral over S^n of |grad u|^2 for the graph function u.
double dirichlet_energy(const Domain& d);

/// integral over S^n of u^2.
double l2_norm2(const Domain& d);

double c1_norm(const Domain& d);

struct NormalizeOptions {
    double vol_rel_tol = 1e-10;
    double bar_abs_tol = 1e-8;
    int max_rounds = 50;
    enum class Target { volume, area } target = Target::volume;
};

/// Rescales to the unit-ball volume (or area, for the I_0-normalized
/// theorem) and translates the barycenter to the origin by re-graphing.
Domain normalize(const Domain& d, const NormalizeOptions& opt = {});

/// Minimum of fn over the evaluation nodes of the domain.
double min_over_domain(const Domain& d, const std::function<double(const PointJet&, int)>& fn);

struct PrincipalCurvatures {
    double k1 = 0, k2 = 0;
};

/// Finite-difference shape operator for grid fields: embeds the graph in a
/// chart rotated to the node, assembles the fundamental forms from
/// fourth-order stencils and returns both principal curvatures per node.
std::vector<PrincipalCurvatures> shape_operator_fd(const sphere::SphereField& field,
                                                   double step = 4e-3);

struct AfRatio {
    double ratio = 0;
    bool valid = false; // false when the sigma_k integral is nonpositive
};

/// Ball-normalized isoperimetric-type ratio
/// (I_k / I_k(B))^{1/(n+1-k)} / (Vol / Vol(B))^{1/(n+1)}.
AfRatio af_ratio(const Domain& d, int k);

/// Radial graph of an axis-aligned ellipsoid as a grid field (n = 2).
sphere::SphereField ellipsoid_field(std::shared_ptr<const sphere::SphereGrid> grid, double ax,
                                    double ay, double az);

} // namespace quermass::geom
