#include "diracres/contour.hpp"

#include <cmath>

namespace diracres {

namespace {

struct Seg {
    cx za, zb;
    cx fa, fb;
    int depth;
};

} // namespace

WindingResult count_zeros_contour(const std::function<cx(cx)>& f,
                                  const std::function<cx(cx)>& deriv,
                                  const Rect& rect,
                                  double phase_cap,
                                  std::size_t init_per_edge,
                                  std::size_t max_evals) {
    WindingResult res;
    res.min_abs = std::numeric_limits<double>::infinity();

    const cx c0(rect.re0, rect.im0), c1(rect.re1, rect.im0);
    const cx c2(rect.re1, rect.im1), c3(rect.re0, rect.im1);
    const cx corners[5] = {c0, c1, c2, c3, c0};

    auto probe = [&](cx z) {
        cx v = f(z);
        ++res.evals;
        if (!finite(v)) throw numerical_error("contour: non-finite value on boundary");
        double a = std::abs(v);
        if (a < res.min_abs) { res.min_abs = a; res.argmin = z; }
        return v;
    };

    double total_phase = 0.0;
    cx integral = 0.0;  // trapezoid of f'/f when deriv is given

    std::vector<Seg> stack;
    for (int e = 0; e < 4; ++e) {
        cx za = corners[e], zb = corners[e + 1];
        std::vector<cx> pts(init_per_edge + 1);
        std::vector<cx> vals(init_per_edge + 1);
        for (std::size_t i = 0; i <= init_per_edge; ++i) {
            pts[i] = za + (zb - za) * (double(i) / double(init_per_edge));
            vals[i] = probe(pts[i]);
        }
        for (std::size_t i = 0; i < init_per_edge; ++i)
            stack.push_back({pts[i], pts[i + 1], vals[i], vals[i + 1], 0});
    }

    const int max_depth = 48;
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        if (s.fa == cx(0.0) || s.fb == cx(0.0))
            throw numerical_error("contour: zero on boundary");
        double dphi = std::arg(s.fb / s.fa);
        if (std::abs(dphi) <= phase_cap || s.depth >= max_depth) {
            if (s.depth >= max_depth && std::abs(dphi) > phase_cap)
                throw numerical_error("contour: phase refinement exhausted near boundary");
            total_phase += dphi;
            if (deriv) {
                cx la = deriv(s.za) / s.fa, lb = deriv(s.zb) / s.fb;
                integral += 0.5 * (la + lb) * (s.zb - s.za);
            }
            continue;
        }
        if (res.evals >= max_evals)
            throw numerical_error("contour: evaluation budget exhausted");
        cx zm = 0.5 * (s.za + s.zb);
        cx fm = probe(zm);
        stack.push_back({zm, s.zb, fm, s.fb, s.depth + 1});
        stack.push_back({s.za, zm, s.fa, fm, s.depth + 1});
    }

    const double w = total_phase / (2.0 * PI);
    res.count = (int)std::lround(w);
    if (deriv) {
        cx wq = integral / cx(0.0, 2.0 * PI);
        res.residual = std::abs(wq - cx((double)res.count, 0.0));
    } else {
        res.residual = std::abs(w - (double)res.count);
    }
    return res;
}

} // namespace diracres
