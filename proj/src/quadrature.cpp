#include "quermass/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>

namespace quermass::quad {

namespace {

GaussLegendre compute_gauss_legendre(int N) {
    GaussLegendre gl;
    gl.nodes.resize(std::size_t(N));
    gl.weights.resize(std::size_t(N));
    for (int i = 0; i < (N + 1) / 2; ++i) {
        // Chebyshev-based initial guess, then Newton on P_N.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (N + 0.5));
        double pp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= N; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = N * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        gl.nodes[std::size_t(N - 1 - i)] = x;
        gl.weights[std::size_t(N - 1 - i)] = w;
        gl.nodes[std::size_t(i)] = -x;
        gl.weights[std::size_t(i)] = w;
    }
    return gl;
}

// G7/K15 nodes and weights (positive half; node 0 listed once).
constexpr double kGK_x[8] = {
    0.000000000000000, 0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759, 0.991455371120813};
constexpr double kGK_wk[8] = {
    0.209482141084728, 0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr double kGK_wg[4] = {
    0.417959183673469, 0.381830050505119, 0.279705391489277, 0.129484966168870};

void gk15(const std::function<double(double)>& f, double a, double b,
          double& value, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double f0 = f(c);
    double k = kGK_wk[0] * f0;
    double g = kGK_wg[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * kGK_x[i];
        const double s = f(c + dx) + f(c - dx);
        k += kGK_wk[i] * s;
        if (i % 2 == 0) g += kGK_wg[i / 2] * s;
    }
    value = k * h;
    err = std::abs((k - g) * h);
    err = std::min(err, std::pow(200.0 * err, 1.5));
}

} // namespace

const GaussLegendre& gauss_legendre(int N) {
    if (N < 1) throw std::invalid_argument("gauss_legendre: N must be positive");
    static std::map<int, GaussLegendre> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(N);
    if (it == cache.end()) it = cache.emplace(N, compute_gauss_legendre(N)).first;
    return it->second;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_intervals) {
    struct Seg { double a, b, value, err; };
    std::vector<Seg> segs;
    Seg s0{a, b, 0, 0};
    gk15(f, a, b, s0.value, s0.err);
    segs.push_back(s0);
    int used = 1;
    while (true) {
        double total_err = 0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            total_err += segs[i].err;
            if (segs[i].err > segs[worst].err) worst = i;
        }
        if (total_err <= abs_tol) break;
        if (used >= max_intervals)
            throw ResolutionError("integrate: interval budget exhausted");
        Seg w = segs[worst];
        const double mid = 0.5 * (w.a + w.b);
        Seg l{w.a, mid, 0, 0}, r{mid, w.b, 0, 0};
        gk15(f, l.a, l.b, l.value, l.err);
        gk15(f, r.a, r.b, r.value, r.err);
        segs[worst] = l;
        segs.push_back(r);
        ++used;
    }
    // deterministic reduction: sum in interval order
    std::sort(segs.begin(), segs.end(), [](const Seg& x, const Seg& y) { return x.a < y.a; });
    double sum = 0;
    for (const auto& s : segs) sum += s.value;
    return sum;
}

double sphere_area(int n) {
    if (n < 1) throw std::invalid_argument("sphere_area: need n >= 1");
    return 2.0 * std::pow(std::numbers::pi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
}

double ball_volume(int m) {
    if (m < 1) throw std::invalid_argument("ball_volume: need m >= 1");
    return sphere_area(m - 1) / m;
}

double dbinom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    double c = 1.0;
    for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
    return c;
}

namespace {

int thread_cap() {
    static int cap = [] {
        if (const char* env = std::getenv("QUERMASS_THREADS")) {
            int v = std::atoi(env);
            if (v >= 1) return v;
        }
        unsigned hc = std::thread::hardware_concurrency();
        return hc == 0 ? 1 : int(hc);
    }();
    return cap;
}

} // namespace

void parallel_for(int count, const std::function<void(int)>& fn) {
    const int workers = std::min(thread_cap(), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

} // namespace quermass::quad
