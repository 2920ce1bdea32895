#include "quermass/symfun.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace quermass::symfun {

std::vector<double> sigma_all_from_eigenvalues(const std::vector<double>& lambda) {
    const int n = int(lambda.size());
    std::vector<double> e(std::size_t(n) + 1, 0.0);
    e[0] = 1.0;
    for (int i = 0; i < n; ++i)
        for (int k = std::min(i + 1, n); k >= 1; --k)
            e[std::size_t(k)] += lambda[std::size_t(i)] * e[std::size_t(k) - 1];
    return e;
}

double sigma_from_eigenvalues(const std::vector<double>& lambda, int k) {
    const int n = int(lambda.size());
    if (k < 0 || k > n) throw std::invalid_argument("sigma_from_eigenvalues: k out of range");
    return sigma_all_from_eigenvalues(lambda)[std::size_t(k)];
}

namespace {

// Newton's identities from power sums p_i = tr(A^i).
std::vector<double> sigma_from_traces(const SymMatrix& A) {
    const int n = A.size();
    Eigen::MatrixXd M = A.dense();
    Eigen::MatrixXd P = M;
    std::vector<double> p(std::size_t(n) + 1, 0.0);
    for (int i = 1; i <= n; ++i) {
        p[std::size_t(i)] = P.trace();
        if (i < n) P = P * M;
    }
    std::vector<double> e(std::size_t(n) + 1, 0.0);
    e[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        double s = 0;
        for (int i = 1; i <= k; ++i) {
            double term = e[std::size_t(k - i)] * p[std::size_t(i)];
            s += (i % 2 == 1) ? term : -term;
        }
        e[std::size_t(k)] = s / k;
    }
    return e;
}

} // namespace

std::vector<double> sigma_all_matrix(const SymMatrix& A) {
    if (!A.finite()) throw std::invalid_argument("sigma_matrix: non-finite entries");
    if (A.size() <= 12) return sigma_from_traces(A);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A.dense(), Eigen::EigenvaluesOnly);
    std::vector<double> lam(es.eigenvalues().data(), es.eigenvalues().data() + A.size());
    return sigma_all_from_eigenvalues(lam);
}

double sigma_matrix(const SymMatrix& A, int k) {
    if (k < 0 || k > A.size()) throw std::invalid_argument("sigma_matrix: k out of range");
    return sigma_all_matrix(A)[std::size_t(k)];
}

std::vector<SymMatrix> newton_tensor_chain(const SymMatrix& A, int k) {
    const int n = A.size();
    if (k < 0 || k > n) throw std::invalid_argument("newton_tensor: k out of range");
    std::vector<double> sig = sigma_all_matrix(A);
    Eigen::MatrixXd M = A.dense();
    std::vector<SymMatrix> chain;
    chain.reserve(std::size_t(k) + 1);
    chain.push_back(SymMatrix::identity(n));
    Eigen::MatrixXd T = Eigen::MatrixXd::Identity(n, n);
    for (int m = 1; m <= k; ++m) {
        T = sig[std::size_t(m)] * Eigen::MatrixXd::Identity(n, n) - T * M;
        chain.push_back(SymMatrix::from_dense(T));
        T = chain.back().dense(); // keep the recursion on the symmetrized value
    }
    return chain;
}

NewtonTensor newton_tensor(const SymMatrix& A, int k) {
    auto chain = newton_tensor_chain(A, k);
    return NewtonTensor{k, chain.back()};
}

double polarized_sigma(const std::vector<SymMatrix>& As) {
    const int k = int(As.size());
    if (k < 1 || k > 4) throw std::invalid_argument("polarized_sigma: k must be in [1,4]");
    const int n = As[0].size();
    if (n > 8) throw std::invalid_argument("polarized_sigma: n too large for the delta expansion");
    for (const auto& A : As)
        if (A.size() != n) throw std::invalid_argument("polarized_sigma: size mismatch");

    // (1/(k-1)!) sum_{pi in S_k} sgn(pi) sum_{i_1..i_k} prod_a (A_a)_{i_a, i_pi(a)}
    std::vector<int> perm(std::size_t(k), 0);
    std::iota(perm.begin(), perm.end(), 0);
    double total = 0;
    do {
        int inv = 0;
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
                if (perm[std::size_t(a)] > perm[std::size_t(b)]) ++inv;
        const double sgn = (inv % 2 == 0) ? 1.0 : -1.0;

        std::vector<int> idx(std::size_t(k), 0);
        double contrib = 0;
        while (true) {
            double prod = 1;
            for (int a = 0; a < k; ++a)
                prod *= As[std::size_t(a)](idx[std::size_t(a)], idx[std::size_t(perm[std::size_t(a)])]);
            contrib += prod;
            int pos = k - 1;
            while (pos >= 0 && ++idx[std::size_t(pos)] == n) idx[std::size_t(pos--)] = 0;
            if (pos < 0) break;
        }
        total += sgn * contrib;
    } while (std::next_permutation(perm.begin(), perm.end()));

    double fact = 1;
    for (int i = 2; i <= k - 1; ++i) fact *= i;
    return total / fact;
}

} // namespace quermass::symfun
