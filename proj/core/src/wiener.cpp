#include "diracres/wiener.hpp"

#include "diracres/fft.hpp"

#include <algorithm>
#include <cmath>

namespace diracres {

namespace {

void check_grid(const WienerElement& w, const char* who) {
    if (!(w.step > 0)) throw validation_error(std::string(who) + ": step must be positive");
    if (w.h.size() < 2) throw validation_error(std::string(who) + ": need at least 2 nodes");
}

double profile_l1(const std::vector<cx>& h, double step) { return quad_abs(h, step); }

} // namespace

WienerElement wiener_unit(double step, std::size_t n) {
    WienerElement w;
    w.c = 1.0;
    w.h.assign(n, 0.0);
    w.step = step;
    return w;
}

double wiener_norm(const WienerElement& w) {
    check_grid(w, "wiener_norm");
    return std::abs(w.c) + quad_abs(w.h, w.step) + std::sqrt(quad_abs2(w.h, w.step)) + w.tail_bound;
}

cx freq_value(const WienerElement& w, cx k) {
    check_grid(w, "freq_value");
    const auto wt = gregory_weights(w.h.size());
    const cx r = std::exp(cx(0.0, 2.0) * k * w.step);
    cx phase = 1.0, acc = 0.0;
    for (std::size_t m = 0; m < w.h.size(); ++m) {
        acc += wt[m] * w.h[m] * phase;
        phase *= r;
    }
    return w.c + acc * w.step;
}

std::vector<cx> convolve(const std::vector<cx>& h1, const std::vector<cx>& h2,
                         double step, std::size_t n_out) {
    const std::size_t n1 = h1.size(), n2 = h2.size();
    const std::size_t nfft = next_pow2(n1 + n2);
    std::vector<cx> A(nfft, 0.0), B(nfft, 0.0);
    std::copy(h1.begin(), h1.end(), A.begin());
    std::copy(h2.begin(), h2.end(), B.begin());
    fft(A, false);
    fft(B, false);
    for (std::size_t i = 0; i < nfft; ++i) A[i] *= B[i];
    fft(A, true);
    std::vector<cx> out(n_out, 0.0);
    const double inv = 1.0 / (double)nfft;
    for (std::size_t m = 0; m < n_out && m < nfft; ++m) out[m] = A[m] * inv;

    // Gregory endpoint corrections for the integration range [0, s_m]
    static const double corr[3] = {3.0 / 8.0 - 1.0, 7.0 / 6.0 - 1.0, 23.0 / 24.0 - 1.0};
    for (int j = 0; j < 3; ++j) {
        if ((std::size_t)j < n1) {
            const cx cjg = corr[j] * h1[j];
            const std::size_t hi = std::min(n_out, (std::size_t)j + n2);
            for (std::size_t m = j; m < hi; ++m) out[m] += cjg * h2[m - j];
        }
        if ((std::size_t)j < n2) {
            const cx cjh = corr[j] * h2[j];
            const std::size_t hi = std::min(n_out, (std::size_t)j + n1);
            for (std::size_t m = j; m < hi; ++m) out[m] += cjh * h1[m - j];
        }
    }
    for (auto& v : out) v *= step;

    // the short ranges get plain trapezoid; the empty range at s=0 is exactly 0
    for (std::size_t m = 0; m < std::min<std::size_t>(7, n_out); ++m) {
        if (m == 0) { out[0] = 0.0; continue; }
        const std::size_t lo = (m >= n2) ? m - (n2 - 1) : 0;
        const std::size_t hi = std::min(m, n1 - 1);
        if (hi < lo) { out[m] = 0.0; continue; }
        cx acc = 0.0;
        for (std::size_t l = lo; l <= hi; ++l) {
            double wgt = (l == lo || l == hi) ? 0.5 : 1.0;
            if (hi == lo) wgt = 1.0;
            acc += wgt * h1[l] * h2[m - l];
        }
        out[m] = acc * step;
    }
    return out;
}

WienerElement multiply(const WienerElement& w1, const WienerElement& w2) {
    check_grid(w1, "multiply");
    check_grid(w2, "multiply");
    if (std::abs(w1.step - w2.step) > 1e-14 * w1.step)
        throw validation_error("multiply: mismatched steps; resample explicitly first");
    const std::size_t n_out = std::max(w1.h.size(), w2.h.size());
    const std::size_t n_full = w1.h.size() + w2.h.size() - 1;
    std::vector<cx> conv = convolve(w1.h, w2.h, w1.step, n_full);

    WienerElement out;
    out.step = w1.step;
    out.c = w1.c * w2.c;
    out.h.assign(n_out, 0.0);
    for (std::size_t m = 0; m < n_out; ++m) {
        cx v = conv[m];
        if (m < w2.h.size()) v += w1.c * w2.h[m];
        if (m < w1.h.size()) v += w2.c * w1.h[m];
        out.h[m] = v;
    }
    // discarded convolution mass beyond the kept horizon
    double discarded = 0.0;
    for (std::size_t m = n_out; m < n_full; ++m) discarded += std::abs(conv[m]);
    discarded *= w1.step;
    const double l1_1 = profile_l1(w1.h, w1.step), l1_2 = profile_l1(w2.h, w2.step);
    out.tail_bound = std::abs(w1.c) * w2.tail_bound + std::abs(w2.c) * w1.tail_bound +
                     w1.tail_bound * (l1_2 + w2.tail_bound) + l1_1 * w2.tail_bound + discarded;
    return out;
}

SpectrumResult spectrum_test(const WienerElement& w, std::size_t n_real,
                             std::size_t n_rays, std::size_t per_ray) {
    check_grid(w, "spectrum_test");
    SpectrumResult res;
    res.limit_value = w.c;
    res.min_modulus = std::numeric_limits<double>::infinity();
    const double K = 0.15 * PI / w.step;  // stay well under the grid Nyquist rate
    auto visit = [&](cx k) {
        const cx v = freq_value(w, k);
        const double a = std::abs(v);
        if (a < res.min_modulus) {
            res.min_modulus = a;
            res.at_min = k;
        }
        if (v.real() <= 0.0 && std::abs(v.imag()) < 1e-12) res.on_log_cut = true;
    };
    for (std::size_t i = 0; i < n_real; ++i)
        visit(cx(-K + 2.0 * K * (double)i / (double)(n_real - 1), 0.0));
    for (std::size_t r = 1; r <= n_rays; ++r) {
        const double th = PI * (double)r / (double)(n_rays + 1);
        for (std::size_t l = 0; l < per_ray; ++l) {
            const double rad = K * std::pow(2.0, -(double)l);
            visit(rad * cx(std::cos(th), std::sin(th)));
        }
    }
    const double a = std::abs(w.c);
    if (a < res.min_modulus) res.min_modulus = a;  // the limit point belongs to sigma(f)
    if (std::abs(w.c) > 0 && w.c.real() <= 0.0 && std::abs(w.c.imag()) < 1e-12) res.on_log_cut = true;
    res.invertible = res.min_modulus > 0.0 && std::abs(w.c) > 0.0;
    return res;
}

WienerElement log_element(const WienerElement& w, const LogOptions& opts) {
    check_grid(w, "log_element");
    if (std::abs(w.c - 1.0) > 1e-12)
        throw validation_error("log_element: constant part must equal 1");
    {
        SpectrumResult sp = spectrum_test(w);
        if (sp.on_log_cut || !(sp.min_modulus > 0.0))
            throw validation_error("log_element: sampled value on the branch cut (-inf, 0]");
    }
    const std::size_t n = w.h.size();
    const std::size_t nfft = next_pow2(std::max<std::size_t>(opts.pad_factor * n, 2 * n));
    // trapezoid embedding diagonalizes the circle algebra up to O(step^2)
    std::vector<cx> buf(nfft, 0.0);
    for (std::size_t m = 0; m < n; ++m) buf[m] = w.h[m];
    buf[0] *= 0.5;
    fft(buf, false);
    for (std::size_t j = 0; j < nfft; ++j) {
        const cx F = 1.0 + w.step * buf[j];
        if (F.real() <= 0.0 && std::abs(F.imag()) < 1e-14)
            throw validation_error("log_element: transform value on the branch cut");
        buf[j] = std::log(F);  // principal branch, real on (0, inf)
    }
    fft(buf, true);
    const double inv = 1.0 / ((double)nfft * w.step);
    WienerElement out;
    out.c = 0.0;
    out.step = w.step;
    out.h.assign(n, 0.0);
    for (std::size_t m = 0; m < n; ++m) out.h[m] = buf[m] * inv;
    out.h[0] *= 2.0;  // undo the trapezoid embedding weight at node 0

    double kept = 0.0, dropped = 0.0;
    for (std::size_t m = 0; m < nfft; ++m) {
        const double a = std::abs(buf[m] * inv);
        if (m < n) kept += a; else dropped += a;
    }
    const double leak = (kept + dropped) > 0 ? dropped / (kept + dropped) : 0.0;
    if (leak > opts.leak_tol)
        throw numerical_error("log_element: mass beyond the horizon (" + std::to_string(leak) +
                              ") above tolerance; enlarge the element horizon");
    out.tail_bound = w.tail_bound + dropped * w.step;
    return out;
}

WienerElement log_element_contour(const WienerElement& w, std::size_t contour_points) {
    check_grid(w, "log_element_contour");
    WienerElement f = w;
    f.c = 0.0;  // the contour acts on f = w - 1
    const double r = wiener_norm(f);
    if (!(r > 0)) {
        WienerElement out = f;
        return out;
    }
    if (r >= 0.25)
        throw validation_error("log_element_contour: norm(w-1) must be < 1/4");
    const double R = 2.0 * r;
    // Neumann series (lambda - f)^{-1} = sum_m f^m / lambda^{m+1}; ||f||/R = 1/2
    const std::size_t n_terms = 48;
    std::vector<std::vector<cx>> powers(n_terms + 1);
    powers[1] = f.h;
    for (std::size_t m = 2; m <= n_terms; ++m)
        powers[m] = convolve(powers[m - 1], f.h, f.step, f.h.size());

    WienerElement out;
    out.c = 0.0;
    out.step = f.step;
    out.h.assign(f.h.size(), 0.0);
    // (1/2pi i) oint resolvent(lambda) log(1+lambda) dlambda, trapezoid in theta
    for (std::size_t j = 0; j < contour_points; ++j) {
        const double th = 2.0 * PI * ((double)j + 0.5) / (double)contour_points;
        const cx lam = R * std::exp(cx(0.0, th));
        const cx phi = std::log(1.0 + lam);
        // profile part of the resolvent: sum_{m>=1} lambda^{-m-1} f^m
        cx lam_pow = lam * lam;
        for (std::size_t m = 1; m <= n_terms; ++m) {
            const cx coef = phi * lam / (lam_pow * (double)contour_points);
            for (std::size_t i = 0; i < out.h.size(); ++i) out.h[i] += coef * powers[m][i];
            lam_pow *= lam;
        }
    }
    return out;
}

WienerElement exp_element(const WienerElement& w) {
    check_grid(w, "exp_element");
    if (std::abs(w.c) > 1e-12)
        throw validation_error("exp_element: constant part must equal 0");
    const std::size_t n = w.h.size();

    auto try_series = [&](const WienerElement& f, WienerElement& out) -> bool {
        out.c = 1.0;
        out.step = f.step;
        out.h.assign(n, 0.0);
        out.tail_bound = 0.0;
        std::vector<cx> term = f.h;
        double term_tail = f.tail_bound;
        const double l1f = profile_l1(f.h, f.step);
        for (std::size_t m = 1; m <= 60; ++m) {
            for (std::size_t i = 0; i < n; ++i) out.h[i] += term[i];
            out.tail_bound += term_tail;
            const double tn = quad_abs(term, f.step) + std::sqrt(quad_abs2(term, f.step)) + term_tail;
            const double accn = std::abs(out.c) + quad_abs(out.h, f.step) +
                                std::sqrt(quad_abs2(out.h, f.step)) + out.tail_bound;
            if (tn < 1e-12 * accn) return true;
            const double l1_term = quad_abs(term, f.step);
            std::vector<cx> full = convolve(term, f.h, f.step, 2 * n - 1);
            double dropped = 0.0;
            for (std::size_t i = n; i < full.size(); ++i) dropped += std::abs(full[i]);
            term.assign(full.begin(), full.begin() + (std::ptrdiff_t)n);
            term_tail = (term_tail * (l1f + f.tail_bound) + l1_term * f.tail_bound +
                         dropped * f.step) / (double)(m + 1);
            for (auto& v : term) v /= (double)(m + 1);
        }
        return false;
    };

    WienerElement out;
    if (try_series(w, out)) return out;

    // scaling and squaring: exp(w) = exp(w/2)^2
    WienerElement half = w;
    for (int halvings = 1; halvings <= 10; ++halvings) {
        for (auto& v : half.h) v *= 0.5;
        half.tail_bound *= 0.5;
        WienerElement e;
        if (try_series(half, e)) {
            for (int s = 0; s < halvings; ++s) e = multiply(e, e);
            return e;
        }
    }
    throw numerical_error("exp_element: series not converged after 10 halvings");
}

LogNormBound log_norm_bound(const WienerElement& w) {
    check_grid(w, "log_norm_bound");
    if (std::abs(w.c - 1.0) > 1e-12)
        throw validation_error("log_norm_bound: constant part must equal 1");
    WienerElement f = w;
    f.c = 0.0;
    const double nf = wiener_norm(f);
    LogNormBound out;
    if (nf == 0.0) {
        out.ratio = 0.0;
        out.bound_ok = true;
        return out;
    }
    if (!(nf < 0.25))
        throw validation_error("log_norm_bound: norm(w - 1) must be < 1/4");
    const WienerElement lg = log_element(w);
    out.ratio = wiener_norm(lg) / nf;
    out.bound_ok = out.ratio <= 2.78;
    return out;
}

namespace {

double atom_horizon(double y, double rho_abs, double tail_target) {
    // tail(T) = |2 rho| e^{-2yT} / (2y) <= tail_target
    const double num = std::max(rho_abs, 1e-8) / (y * tail_target);
    double T = std::log(std::max(num, 2.0)) / (2.0 * y);
    return std::max(T, 2.0 / y);
}

} // namespace

WienerElement atom_on_grid(cx k0, cx rho, double step, std::size_t n) {
    if (!(k0.imag() < 0.0)) throw validation_error("atom: k0 must lie in the open lower half-plane");
    WienerElement w;
    w.c = 1.0;
    w.step = step;
    w.h.resize(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double s = step * (double)m;
        w.h[m] = cx(0.0, 2.0) * rho * std::exp(cx(0.0, -2.0) * k0 * s);
    }
    const double y = -k0.imag();
    w.tail_bound = 2.0 * std::abs(rho) * std::exp(-2.0 * y * w.horizon()) / (2.0 * y);
    return w;
}

WienerElement atom(cx k0, cx rho, double tail_target) {
    if (!(k0.imag() < 0.0)) throw validation_error("atom: k0 must lie in the open lower half-plane");
    const double y = -k0.imag();
    const double T = atom_horizon(y, std::abs(rho), tail_target);
    const std::size_t n = 4096;
    return atom_on_grid(k0, rho, T / (double)(n - 1), n);
}

WienerElement atom_log_on_grid(cx k0, cx rho, double step, std::size_t n) {
    if (!(k0.imag() < 0.0))
        throw validation_error("atom_log: k0 must lie in the open lower half-plane");
    if (!((k0 + rho).imag() < 0.0))
        throw validation_error("atom_log: k0 + rho must stay in the open lower half-plane");
    WienerElement w;
    w.c = 0.0;
    w.step = step;
    w.h.resize(n);
    w.h[0] = cx(0.0, 2.0) * rho;
    for (std::size_t m = 1; m < n; ++m) {
        const double s = step * (double)m;
        w.h[m] = std::exp(cx(0.0, -2.0) * k0 * s) * (1.0 - std::exp(cx(0.0, -2.0) * rho * s)) / s;
    }
    const double y1 = -k0.imag(), y2 = -(k0 + rho).imag();
    const double T = w.horizon();
    w.tail_bound = (std::exp(-2.0 * y1 * T) / (2.0 * y1) + std::exp(-2.0 * y2 * T) / (2.0 * y2)) / T;
    return w;
}

WienerElement atom_log(cx k0, cx rho, double tail_target) {
    if (!(k0.imag() < 0.0))
        throw validation_error("atom_log: k0 must lie in the open lower half-plane");
    const double y = std::min(-k0.imag(), -(k0 + rho).imag());
    if (!(y > 0.0))
        throw validation_error("atom_log: k0 + rho must stay in the open lower half-plane");
    const double T = atom_horizon(y, std::abs(rho), tail_target);
    const std::size_t n = 4096;
    return atom_log_on_grid(k0, rho, T / (double)(n - 1), n);
}

} // namespace diracres
