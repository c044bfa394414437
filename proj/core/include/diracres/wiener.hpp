#ifndef DIRACRES_WIENER_HPP
#define DIRACRES_WIENER_HPP

#include "diracres/common.hpp"

namespace diracres {

// Element c + F h of the half-line Wiener algebra, h sampled on nodes
// s_m = m*step, m = 0..n-1 (horizon T = (n-1)*step). tail_bound is the certified
// L1 mass of the represented function beyond T.
struct WienerElement {
    cx c = 0.0;
    std::vector<cx> h;
    double step = 0.0;
    double tail_bound = 0.0;

    double horizon() const { return step * (double)(h.size() - 1); }
    std::size_t n_nodes() const { return h.size(); }
};

WienerElement wiener_unit(double step, std::size_t n);

// |c| + L1 + L2 quadrature over [0,T] + tail_bound
double wiener_norm(const WienerElement& w);

// frequency value c + int_0^T h(s) e^{2iks} ds (Gregory quadrature); valid for
// Im k >= 0 where the kernel is bounded.
cx freq_value(const WienerElement& w, cx k);

// (c1 c2, c1 h2 + c2 h1 + h1*h2): half-line convolution by Gregory-corrected FFT;
// horizon truncated back to max(T1,T2), discarded L1 mass added to tail_bound.
WienerElement multiply(const WienerElement& w1, const WienerElement& w2);

// raw profile convolution on the common grid, quadrature of
// (h1*h2)(s_m) = int_0^{s_m} h1 h2(s_m-.) dt, output on n_out nodes
std::vector<cx> convolve(const std::vector<cx>& h1, const std::vector<cx>& h2,
                         double step, std::size_t n_out);

struct SpectrumResult {
    bool invertible = false;
    double min_modulus = 0.0;
    cx at_min = 0.0;        // location of the minimizing sample
    cx limit_value = 0.0;   // lim f(k) = c
    bool on_log_cut = false;  // some sampled value landed on (-inf, 0]
};

// Samples f on a real grid plus upper-half-plane rays (the sampled certificate for
// sigma(f) = f(closed upper half-plane) + {lim f}).
SpectrumResult spectrum_test(const WienerElement& w,
                             std::size_t n_real = 2048, std::size_t n_rays = 8,
                             std::size_t per_ray = 16);

struct LogOptions {
    std::size_t pad_factor = 8;    // circle size >= pad_factor * n, power of two
    double leak_tol = 1e-3;        // relative mass of log(f) wrapped/discarded beyond T
};

// Profile of log f via the discrete frequency calculus: padded transform,
// principal branch pointwise (log(x) real for x > 0), inverse transform to [0,T].
// pre: c == 1 and the sampled certificate avoids (-inf, 0].
WienerElement log_element(const WienerElement& w, const LogOptions& opts = {});

// Riesz-Dunford cross-check of log_element: (1/2pi i) oint (lambda-f)^{-1} log(1+lambda) dlambda
// over |lambda| = 2 norm(w-1), trapezoid contour, Neumann-series resolvent.
WienerElement log_element_contour(const WienerElement& w, std::size_t contour_points = 64);

// Power series 1 + sum w^m/m!, term-norm stop at 1e-12 * accumulated norm; falls
// back to exp(w/2)^2 scaling-and-squaring (up to 10 halvings) when the series
// does not converge in 60 terms. pre: c == 0; result has c = 1.
WienerElement exp_element(const WienerElement& w);

struct LogNormBound {
    bool bound_ok = false;
    double ratio = 0.0;   // norm(log w) / norm(w - 1); 0 for w == unit
};

// pre: norm(w - unit) < 1/4. Checks the ratio against 2.78 (= 2*2ln2 rounded up,
// the constant in the contour estimate of the logarithm).
LogNormBound log_norm_bound(const WienerElement& w);

// 1 + rho/(k0 - k) as an algebra element: profile 2i rho e^{-2i k0 s}; horizon per
// the tail policy (analytic tail bound below tail_target). pre: Im k0 < 0.
WienerElement atom(cx k0, cx rho, double tail_target = 1e-8);
WienerElement atom_on_grid(cx k0, cx rho, double step, std::size_t n);

// log(1 + rho/(k0 - k)): profile e^{-2i k0 s}(1 - e^{-2i rho s})/s, value 2i rho at
// s = 0. pre: Im k0 < 0 and Im(k0 + rho) < 0.
WienerElement atom_log(cx k0, cx rho, double tail_target = 1e-8);
WienerElement atom_log_on_grid(cx k0, cx rho, double step, std::size_t n);

} // namespace diracres

#endif
