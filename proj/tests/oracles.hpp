// Test-only oracles, independent of the library's computational paths.
#ifndef DIRACRES_TESTS_ORACLES_HPP
#define DIRACRES_TESTS_ORACLES_HPP

#include "diracres/common.hpp"
#include "diracres/fft.hpp"
#include "diracres/potential.hpp"

#include <array>
#include <cmath>

namespace oracles {

using diracres::cx;
using Mat2 = std::array<cx, 4>;  // row major

inline Mat2 mul(const Mat2& A, const Mat2& B) {
    return {A[0] * B[0] + A[1] * B[2], A[0] * B[1] + A[1] * B[3],
            A[2] * B[0] + A[3] * B[2], A[2] * B[1] + A[3] * B[3]};
}

// exp(M) by Taylor series with scaling and squaring (independent of the
// closed-form cosh/sinh propagator).
inline Mat2 expm(Mat2 M) {
    double nrm = 0.0;
    for (const cx& v : M) nrm += std::abs(v);
    int s = 0;
    while (nrm > 0.5) {
        nrm /= 2.0;
        ++s;
    }
    const double sc = std::ldexp(1.0, -s);
    for (cx& v : M) v *= sc;
    Mat2 out = {1.0, 0.0, 0.0, 1.0};
    Mat2 term = {1.0, 0.0, 0.0, 1.0};
    for (int k = 1; k <= 24; ++k) {
        term = mul(term, M);
        for (cx& v : term) v /= (double)k;
        for (int i = 0; i < 4; ++i) out[i] += term[i];
    }
    for (int i = 0; i < s; ++i) out = mul(out, out);
    return out;
}

// f(0,z) by classical RK4 on f' = (Q + iz sigma3) f integrated backward from
// gamma, sub-stepping within each (constant) cell.
inline Mat2 rk4_jost(const diracres::Potential& q, cx z, int substeps = 64) {
    const double dx = q.step();
    const cx e = std::exp(cx(0, 1) * z * q.gamma);
    Mat2 F = {e, 0.0, 0.0, 1.0 / e};
    auto rhs = [&](const Mat2& f, cx qc) -> Mat2 {
        const Mat2 M = {cx(0, 1) * z, qc, std::conj(qc), cx(0, -1) * z};
        return mul(M, f);
    };
    for (std::size_t cell = q.n_cells(); cell-- > 0;) {
        const cx qc = q.samples[cell];
        const double h = -dx / (double)substeps;  // backward
        for (int s = 0; s < substeps; ++s) {
            const Mat2 k1 = rhs(F, qc);
            Mat2 f2 = F;
            for (int i = 0; i < 4; ++i) f2[i] += 0.5 * h * k1[i];
            const Mat2 k2 = rhs(f2, qc);
            Mat2 f3 = F;
            for (int i = 0; i < 4; ++i) f3[i] += 0.5 * h * k2[i];
            const Mat2 k3 = rhs(f3, qc);
            Mat2 f4 = F;
            for (int i = 0; i < 4; ++i) f4[i] += h * k3[i];
            const Mat2 k4 = rhs(f4, qc);
            for (int i = 0; i < 4; ++i)
                F[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    return F;
}

// Time-domain profile of the Jost function by characteristic integration of the
// transformation-operator system
//   A_x = q(x) B,  B_x - B_t = conj(q(x)) A,  B(x,0) = -conj(q(x)),  A(x,gamma-x) = 0,
// with g(t) = A(0,t) - B(0,t). Independent of both the transfer-matrix solver and
// the transform route. Second order in the grid step.
inline std::vector<cx> goursat_profile(const diracres::Potential& q) {
    const std::size_t n = q.n_cells();
    const double h = q.step();
    std::vector<cx> A(n + 1, 0.0), B(n + 1, 0.0);
    std::vector<cx> An(n + 1, 0.0), Bn(n + 1, 0.0);
    // start at x = gamma: t range {0}
    B[0] = -std::conj(q.samples[n - 1]);
    for (std::size_t i = n; i-- > 0;) {
        const cx qc = q.samples[i];           // cell [x_i, x_{i+1}]
        const std::size_t top_old = n - 1 - i;  // valid j range at x_{i+1}
        const std::size_t top_new = top_old + 1;
        // predictor for A along constant t
        for (std::size_t j = 0; j <= top_old; ++j) An[j] = A[j] - h * qc * B[j];
        An[top_new] = 0.0;
        // B along characteristics t + x = const: B_new[j] from B_old[j-1]
        Bn[0] = -std::conj(qc);
        for (std::size_t j = 1; j <= top_new; ++j) {
            const cx a_old = (j - 1 <= top_old) ? A[j - 1] : cx(0.0);
            const cx a_pred = An[j];
            Bn[j] = B[j - 1] - h * std::conj(qc) * 0.5 * (a_old + a_pred);
        }
        // corrector for A
        for (std::size_t j = 0; j <= top_old; ++j)
            An[j] = A[j] - h * qc * 0.5 * (B[j] + Bn[j]);
        An[top_new] = 0.0;
        std::swap(A, An);
        std::swap(B, Bn);
    }
    std::vector<cx> g(n + 1);
    for (std::size_t j = 0; j <= n; ++j) g[j] = A[j] - B[j];
    return g;
}

// Dense-grid inverse transform of a frequency function onto [0, T] nodes, with
// an optional rational tail split handled by the caller.
template <class F>
std::vector<cx> inverse_transform_dense(F&& fun, double k_max, std::size_t n_k,
                                        double step_out, std::size_t n_out) {
    const double dk = 2.0 * k_max / (double)n_k;
    std::vector<cx> h(n_k);
    for (std::size_t j = 0; j < n_k; ++j) h[j] = fun(-k_max + dk * (double)j);
    diracres::fft(h, false);
    const double ds = diracres::PI / (2.0 * k_max);
    for (std::size_t m = 0; m < n_k; ++m) {
        h[m] *= dk / diracres::PI;
        if (m & 1) h[m] = -h[m];
    }
    std::vector<cx> out(n_out);
    for (std::size_t m = 0; m < n_out; ++m) {
        const double s = step_out * (double)m;
        const double u = s / ds;
        const std::size_t m0 = std::min((std::size_t)u, n_k - 2);
        const double t = u - (double)m0;
        out[m] = h[m0] * (1.0 - t) + h[m0 + 1] * t;
    }
    return out;
}

} // namespace oracles

#endif
