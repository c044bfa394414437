#ifndef DIRACRES_SRC_PROPAGATOR_HPP
#define DIRACRES_SRC_PROPAGATOR_HPP

#include "diracres/common.hpp"

#include <cmath>

namespace diracres::detail {

// exp(N) for the traceless cell generator N = -dx*(Q_j + iz sigma3), written as
// C(w2) I + S(w2) N with N^2 = w2 I, w2 = dx^2 (|q|^2 - z^2). C and S are entire
// in w2; the series branch below |w| = 1e-4 handles the removable singularity.
struct CellFuncs {
    cx C, S, Sp;  // cosh w, sinh(w)/w, dS/d(w2)
};

inline CellFuncs cell_funcs(cx w2, bool with_grad) {
    CellFuncs out;
    if (std::abs(w2) < 1e-8) {
        out.C = 1.0 + w2 * (0.5 + w2 * (1.0 / 24.0 + w2 / 720.0));
        out.S = 1.0 + w2 * (1.0 / 6.0 + w2 * (1.0 / 120.0 + w2 / 5040.0));
        if (with_grad) out.Sp = 1.0 / 6.0 + w2 * (1.0 / 60.0 + w2 / 1680.0);
    } else {
        const cx w = std::sqrt(w2);
        out.C = std::cosh(w);
        out.S = std::sinh(w) / w;
        if (with_grad) out.Sp = (out.C - out.S) / (2.0 * w2);
    }
    return out;
}

inline void cell_propagator(cx q, cx z, double dx, cx E[2][2]) {
    const cx w2 = dx * dx * (std::norm(q) - z * z);
    const CellFuncs f = cell_funcs(w2, false);
    const cx n00 = cx(0.0, -1.0) * z * dx;  // N = -dx*M, M = [[iz, q],[conj q, -iz]]
    E[0][0] = f.C + f.S * n00;
    E[0][1] = f.S * (-dx * q);
    E[1][0] = f.S * (-dx * std::conj(q));
    E[1][1] = f.C - f.S * n00;
}

// Also the derivatives of E with respect to Re q and Im q:
// E = C(w2) I + S(w2) N, so dE = (S/2) dw2 I + S'(w2) dw2 N + S dN.
inline void cell_propagator_grad(cx q, cx z, double dx, cx E[2][2], cx dEa[2][2], cx dEb[2][2]) {
    const cx w2 = dx * dx * (std::norm(q) - z * z);
    const CellFuncs f = cell_funcs(w2, true);
    const cx n00 = cx(0.0, -1.0) * z * dx;
    const cx n01 = -dx * q, n10 = -dx * std::conj(q);
    E[0][0] = f.C + f.S * n00;
    E[0][1] = f.S * n01;
    E[1][0] = f.S * n10;
    E[1][1] = f.C - f.S * n00;
    const double a = q.real(), b = q.imag();
    const cx Cp = 0.5 * f.S;  // dC/d(w2)
    // p = Re q: dw2 = 2 dx^2 a, dN = -dx*[[0,1],[1,0]]
    {
        const double dw2 = 2.0 * dx * dx * a;
        dEa[0][0] = Cp * dw2 + f.Sp * dw2 * n00;
        dEa[0][1] = f.Sp * dw2 * n01 + f.S * (-dx);
        dEa[1][0] = f.Sp * dw2 * n10 + f.S * (-dx);
        dEa[1][1] = Cp * dw2 - f.Sp * dw2 * n00;
    }
    // p = Im q: dw2 = 2 dx^2 b, dN = -dx*[[0,i],[-i,0]]
    {
        const double dw2 = 2.0 * dx * dx * b;
        dEb[0][0] = Cp * dw2 + f.Sp * dw2 * n00;
        dEb[0][1] = f.Sp * dw2 * n01 + f.S * (-dx) * cx(0.0, 1.0);
        dEb[1][0] = f.Sp * dw2 * n10 + f.S * (-dx) * cx(0.0, -1.0);
        dEb[1][1] = Cp * dw2 - f.Sp * dw2 * n00;
    }
}

inline void mat_mul(const cx A[2][2], const cx B[2][2], cx out[2][2]) {
    out[0][0] = A[0][0] * B[0][0] + A[0][1] * B[1][0];
    out[0][1] = A[0][0] * B[0][1] + A[0][1] * B[1][1];
    out[1][0] = A[1][0] * B[0][0] + A[1][1] * B[1][0];
    out[1][1] = A[1][0] * B[0][1] + A[1][1] * B[1][1];
}

} // namespace diracres::detail

#endif
