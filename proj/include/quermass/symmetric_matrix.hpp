#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace quermass {

// Dense symmetric matrix with single storage of each entry pair, so symmetry
// holds by construction. Entries are curvatures or Hessian values depending
// on where the matrix came from.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(int n) : n_(n), a_(std::size_t(n) * (n + 1) / 2, 0.0) {
        if (n < 0) throw std::invalid_argument("SymMatrix: negative size");
    }

    static SymMatrix identity(int n) {
        SymMatrix m(n);
        for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
        return m;
    }

    static SymMatrix diagonal(const std::vector<double>& d) {
        SymMatrix m(int(d.size()));
        for (int i = 0; i < m.n_; ++i) m.set(i, i, d[std::size_t(i)]);
        return m;
    }

    /// Symmetrizes (M + M^T)/2 into packed storage.
    static SymMatrix from_dense(const Eigen::MatrixXd& M) {
        SymMatrix m(int(M.rows()));
        for (int i = 0; i < m.n_; ++i)
            for (int j = i; j < m.n_; ++j)
                m.set(i, j, 0.5 * (M(i, j) + M(j, i)));
        return m;
    }

    int size() const { return n_; }

    double operator()(int i, int j) const { return a_[idx(i, j)]; }
    void set(int i, int j, double v) { a_[idx(i, j)] = v; }
    void add(int i, int j, double v) { a_[idx(i, j)] += v; }

    Eigen::MatrixXd dense() const {
        Eigen::MatrixXd M(n_, n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                M(i, j) = (*this)(i, j);
        return M;
    }

    bool finite() const {
        for (double v : a_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    double trace() const {
        double t = 0;
        for (int i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    /// Quadratic form v^T A v.
    double quad(const Eigen::VectorXd& v) const {
        double s = 0;
        for (int i = 0; i < n_; ++i) {
            s += (*this)(i, i) * v[i] * v[i];
            for (int j = i + 1; j < n_; ++j) s += 2.0 * (*this)(i, j) * v[i] * v[j];
        }
        return s;
    }

private:
    std::size_t idx(int i, int j) const {
        if (i > j) std::swap(i, j);
        return std::size_t(i) * (2 * n_ - i - 1) / 2 + j;
    }

    int n_ = 0;
    std::vector<double> a_;
};

} // namespace quermass
