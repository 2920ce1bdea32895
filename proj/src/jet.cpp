#include "quermass/jet.hpp"

#include "quermass/symfun.hpp"

#include <cmath>

namespace quermass {

std::vector<double> sigma_h_upto(const PointJet& jet, int kmax, int n) {
    if (kmax < 0 || kmax > n) throw std::invalid_argument("sigma_k_h: k out of range");
    if (jet.dim() != n) throw std::invalid_argument("sigma_k_h: jet dimension mismatch");
    const double r = 1.0 + jet.u;
    if (r <= 0.0) throw DomainError("sigma_k_h: 1 + u must stay positive");

    const double W = r * r + jet.grad_norm2();
    const auto chain = symfun::newton_tensor_chain(jet.hess, kmax);
    const auto sig = symfun::sigma_all_matrix(jet.hess);

    // quadratic forms grad^T [T_m] grad; [T_n] vanishes identically, so the
    // singular (n+k-2m)/(n-m) weight is never evaluated at m = n
    std::vector<double> qf(chain.size());
    for (std::size_t m = 0; m < chain.size(); ++m) qf[m] = chain[m].quad(jet.grad);

    std::vector<double> out(std::size_t(kmax) + 1, 0.0);
    for (int k = 0; k <= kmax; ++k) {
        double sum = 0;
        double rpow = 1.0; // (1+u)^m
        for (int m = 0; m <= k; ++m) {
            double term = r * r * sig[std::size_t(m)];
            if (m < n)
                term += double(n + k - 2 * m) / double(n - m) * qf[std::size_t(m)];
            double cnm = 1.0; // C(n-m, k-m)
            for (int i = 0; i < k - m; ++i) cnm = cnm * (n - m - i) / (i + 1);
            double contrib = cnm * term / rpow;
            sum += (m % 2 == 0) ? contrib : -contrib;
            rpow *= r;
        }
        out[std::size_t(k)] = sum / std::pow(W, 0.5 * (k + 2));
    }
    return out;
}

double sigma_k_h(const PointJet& jet, int k, int n) {
    return sigma_h_upto(jet, k, n)[std::size_t(k)];
}

double area_element(const PointJet& jet, int n) {
    const double r = 1.0 + jet.u;
    if (r <= 0.0) throw DomainError("area_element: 1 + u must stay positive");
    return std::pow(r, n - 1) * std::sqrt(r * r + jet.grad_norm2());
}

} // namespace quermass
