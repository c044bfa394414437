#include "diracres/common.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace diracres {

std::vector<double> gregory_weights(std::size_t n) {
    std::vector<double> w(n, 1.0);
    if (n >= 7) {
        w[0] = 3.0 / 8.0;  w[1] = 7.0 / 6.0;  w[2] = 23.0 / 24.0;
        w[n - 1] = w[0];   w[n - 2] = w[1];   w[n - 3] = w[2];
    } else if (n >= 2) {
        w[0] = 0.5;
        w[n - 1] = 0.5;
    }
    return w;
}

double quad_abs(const std::vector<cx>& f, double step) {
    auto w = gregory_weights(f.size());
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * std::abs(f[i]);
    return s * step;
}

double quad_abs2(const std::vector<cx>& f, double step) {
    auto w = gregory_weights(f.size());
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * std::norm(f[i]);
    return s * step;
}

cx quad_sum(const std::vector<cx>& f, double step) {
    auto w = gregory_weights(f.size());
    cx s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * f[i];
    return s * step;
}

bool finite(cx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

unsigned worker_count() {
    static unsigned cached = [] {
        unsigned hw = std::thread::hardware_concurrency();
        if (hw == 0) hw = 1;
        if (const char* env = std::getenv("DIRAC_RES_THREADS")) {
            long v = std::strtol(env, nullptr, 10);
            if (v >= 1 && v < 1024) hw = std::min<unsigned>(hw, (unsigned)v);
        }
        return hw;
    }();
    return cached;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    unsigned nw = worker_count();
    if (nw <= 1 || n < 2 * nw) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        const std::size_t chunk = std::max<std::size_t>(1, n / (8 * nw));
        for (;;) {
            std::size_t lo = next.fetch_add(chunk);
            if (lo >= n) break;
            std::size_t hi = std::min(n, lo + chunk);
            for (std::size_t i = lo; i < hi; ++i) body(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nw - 1);
    for (unsigned t = 1; t < nw; ++t) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
}

} // namespace diracres
