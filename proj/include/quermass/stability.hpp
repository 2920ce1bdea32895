#pragma once

#include "quermass/spheregeom.hpp"

#include <map>
#include <optional>
#include <string>

namespace quermass::stability {

using geom::Domain;

// One record per theorem evaluation: curvature integrals with their signed
// parts, the compensated deficit, the Dirichlet energy of the graph function
// and the measured deficit/energy ratio, plus hypothesis flags.
struct DeficitReport {
    std::string theorem;
    std::string domain_kind;
    int n = 0;
    int k = 0;
    std::optional<int> jprime;
    std::optional<double> delta;

    double I_k = 0, I_k_pos = 0, I_k_neg = 0;
    std::vector<double> sigma_signed;   // j = 1..k
    std::vector<double> sigma_positive;
    std::vector<double> sigma_negative;
    double compensated = 0; // I_k + sum_j sigma_j^- integrals
    double baseline = 0;    // C(n,k) |S^n|
    double deficit = 0;     // compensated (or plain I_k) minus baseline
    double dirichlet = 0;
    double ratio = 0;
    bool ratio_defined = false;

    std::map<std::string, bool> flags;
    std::map<std::string, double> margins;

    double volume_residual = 0;
    double barycenter_residual = 0;
    double normalization_residual = 0; // I_0 or I_j' mismatch when relevant
    bool auto_normalized = false;
};

/// Theorem with the compensated integral: deficit of
/// int sigma_k(h) + sum_j sigma_j(h)^- dmu against the ball. Unnormalized
/// inputs are normalized first (recorded in the report).
DeficitReport deficit_compensated(const Domain& domain, int k);

/// sigma_2^+ deficit with the Laplacian window hypothesis flag.
DeficitReport deficit_sigma2plus(const Domain& domain);

/// Even-k theorem under the I_{j'} constraint with both pointwise sign
/// hypotheses scanned over the quadrature nodes.
DeficitReport deficit_thm12(const Domain& domain, int k, int jprime);

/// Area-normalized compensated deficit with a -delta floor.
DeficitReport deficit_thm14(const Domain& domain, int k, double delta);

/// k-convexity and Hessian-window predicates with worst-point margins.
DeficitReport hypothesis_predicates(const Domain& domain, int k);

enum class ExpansionRoute { hessian, curvature };

/// The quadratic deficit functional: gradient and value terms plus the
/// gradient-sigma_m ladder, evaluated on a normalized field. The curvature
/// route substitutes the binomial-involution image of sigma_m(D^2 u).
double expansion_second_order(const Domain& domain, int k, ExpansionRoute route = ExpansionRoute::hessian);

/// Exact deficit of the plain sigma_k integral (no compensation), for
/// comparing against expansion_second_order.
double exact_deficit(const Domain& domain, int k);

} // namespace quermass::stability
