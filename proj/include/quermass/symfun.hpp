#pragma once

#include "quermass/symmetric_matrix.hpp"

#include <vector>

namespace quermass::symfun {

/// k-th elementary symmetric polynomial of the given values; sigma_0 = 1.
double sigma_from_eigenvalues(const std::vector<double>& lambda, int k);

/// All of sigma_0 .. sigma_n at once (stable one-value-at-a-time recurrence).
std::vector<double> sigma_all_from_eigenvalues(const std::vector<double>& lambda);

/// sigma_k of a symmetric matrix. Uses the trace-power (Newton identity)
/// recursion for n <= 12 and a symmetric eigendecomposition beyond that.
double sigma_matrix(const SymMatrix& A, int k);

/// sigma_0 .. sigma_n of a symmetric matrix.
std::vector<double> sigma_all_matrix(const SymMatrix& A);

struct NewtonTensor {
    int k = 0;
    SymMatrix matrix;
};

/// Newton transformation tensor [T_k](A); [T_0] = Id and
/// [T_{m+1}] = sigma_{m+1} Id - [T_m] A.
NewtonTensor newton_tensor(const SymMatrix& A, int k);

/// [T_0](A) .. [T_k](A) along the recursion.
std::vector<SymMatrix> newton_tensor_chain(const SymMatrix& A, int k);

/// Polarized sigma_k over k symmetric matrices by the generalized Kronecker
/// delta expansion. Oracle role only: k <= 4 and n <= 8.
double polarized_sigma(const std::vector<SymMatrix>& As);

} // namespace quermass::symfun
