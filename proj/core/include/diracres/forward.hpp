#ifndef DIRACRES_FORWARD_HPP
#define DIRACRES_FORWARD_HPP

#include "diracres/common.hpp"
#include "diracres/jost.hpp"
#include "diracres/potential.hpp"

namespace diracres {

// Value of the 2x2 Jost solution at x = 0 for spectral parameter z.
// det(entries) == 1 up to rounding (the generator Q + iz sigma3 is traceless).
struct JostMatrix {
    cx entries[2][2];
    cx z;

    cx det() const {
        return entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0];
    }
};

// f(0,z) by backward transfer-matrix propagation from f(gamma,z) = e^{iz gamma sigma3};
// per cell the propagator is the exact matrix exponential of -(Q_j + iz sigma3)*step.
JostMatrix jost_solution(const Potential& q, cx z);

// psi(z) = f11(0,z) - f21(0,z)
cx jost_function(const Potential& q, cx z);

struct ProfileOptions {
    double leak_tol = 1e-3;
    bool endpoint_smoothing = true;  // subtract the fitted 1/k edge atoms before the FFT
    double smoothing_beta_over_gamma = 4.0;
    double fit_band = 0.70;          // fit on |k| >= fit_band * k_max
};

// Sample psi on a uniform real grid [-k_max, k_max), apply the discrete inverse
// transform (convention F^{-1}h(s) = (1/pi) int h(k) e^{-2iks} dk), truncate to
// [0,gamma]. k_max is snapped so that the transform step divides gamma exactly;
// n_k must be a power of two. Records the relative out-of-support leakage.
JostFunction jost_profile(const Potential& q, double k_max, std::size_t n_k,
                          const ProfileOptions& opts = {});

// conj(psi(z))/psi(z) for real z; |result| = 1 up to rounding.
cx scattering_matrix(const Potential& q, double z);

// S sampled on the symmetric grid k_j = -k_max + j*(2 k_max/n_k), j = 0..n_k-1.
struct SMatrixSamples {
    double k_max = 0.0;
    double gamma = 0.0;
    std::vector<cx> samples;
    double dk() const { return 2.0 * k_max / static_cast<double>(samples.size()); }
    double k_at(std::size_t j) const { return -k_max + dk() * static_cast<double>(j); }
};

SMatrixSamples scattering_grid(const Potential& q, double k_max, std::size_t n_k);

struct Winding {
    int w = 0;
    double residual = 0.0;  // distance of the raw phase count from the integer
};

// Winding number of a unimodular sequence sampled along an increasing real grid,
// with the convention S = e^{-2 i phi}, W = (phi_end - phi_start)/pi. A single
// Blaschke factor (z-i)/(z+i) gives W = -1 under this orientation.
Winding winding_number(const std::vector<cx>& s_samples);

struct VerifySMatrixOptions {
    double leak_tol = 1e-3;
    double unimodular_tol = 1e-10;
};

// Checks W(S) = 0, unimodularity, and that F = F^{-1}(S-1) has relative mass
// below -gamma-delta under leak_tol; reports ||F|| on (-gamma, +inf) in L2 and L1.
Report verify_smatrix(const SMatrixSamples& s, const VerifySMatrixOptions& opts = {});

} // namespace diracres

#endif
