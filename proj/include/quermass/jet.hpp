#pragma once

#include "quermass/symmetric_matrix.hpp"

#include <Eigen/Dense>

namespace quermass {

// Second-order data of the graph function at one point of the unit sphere:
// value, covariant gradient and covariant Hessian in an orthonormal frame.
struct PointJet {
    double u = 0.0;
    Eigen::VectorXd grad;
    SymMatrix hess;

    int dim() const { return hess.size(); }
    double grad_norm2() const { return grad.squaredNorm(); }
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Pointwise k-th mean curvature of the radial graph (1+u)x over S^n.
double sigma_k_h(const PointJet& jet, int k, int n);

/// sigma_0(h) .. sigma_{kmax}(h) sharing one Newton-tensor chain.
std::vector<double> sigma_h_upto(const PointJet& jet, int kmax, int n);

/// Jacobian of the graph area measure relative to dA on S^n:
/// (1+u)^{n-1} sqrt((1+u)^2 + |grad u|^2).
double area_element(const PointJet& jet, int n);

} // namespace quermass
