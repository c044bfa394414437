#ifndef DIRACRES_PERTURB_HPP
#define DIRACRES_PERTURB_HPP

#include "diracres/common.hpp"
#include "diracres/jost.hpp"
#include "diracres/wiener.hpp"

namespace diracres {

struct ShiftPair {
    cx k_old;  // a zero of the source Jost function
    cx rho;    // the shift; k_old + rho must stay in the open lower half-plane
};

// Finite set of zero shifts; unlisted zeros carry rho = 0 implicitly. The
// declared_tail_l1 field lets callers acknowledge a truncated l1 tail, which is
// reported through the eq-(3.9)-style bookkeeping in perturb reports.
struct ShiftSet {
    std::vector<ShiftPair> pairs;
    double declared_tail_l1 = 0.0;

    double l1_norm() const;
    ShiftSet scaled(double t) const;
};

struct ShiftValidation {
    Report report;
    double l1 = 0.0;
    double C1 = 0.0;  // max over pairs of |Im k_old|^{-1/2} (1 + |Im k_old|^{-1/2})
};

// match_tol for "k_old is a zero": |psi_o(k_old)| < 1e-4 * e^{2 gamma |Im k_old|}.
ShiftValidation validate_shifts(const JostFunction& f_o, const ShiftSet& s);

struct PerturbOptions {
    double leak_tol = 1e-3;
    bool run_verify = true;      // run verify_jost on the output (spec post-condition)
    double match_tol = 1e-4;
};

// f(k) = psi_o(k) * prod (1 + rho_n/(k_n^o - k)) realized through its inverse
// transform: the multiplier is a Wiener-algebra element with exact atom profiles,
// so the output profile is g_o + h + g_o * h computed on [0, 2 gamma] and
// truncated to [0, gamma]; the discarded relative mass is recorded as leakage.
JostFunction perturb_multiplier(const JostFunction& f_o, const ShiftSet& s,
                                const PerturbOptions& opts = {});

struct LogExpInfo {
    double norm_F = 0.0;        // norm of the summed log atoms
    double bound = 0.0;         // 2.78 * C1 * ||rho||_l1 (certified when all atoms small)
    bool bound_applicable = false;  // all atoms had norm < 1/4
    bool bound_ok = false;
    std::size_t split_off = 0;  // large atoms composed by direct multiplication
    double tail_report = 0.0;   // declared_tail_l1 contribution, 2.78*C1*tail
};

// Log/exp route: F = sum atom_log(k_n^o, rho_n), result = f_o * exp(F); pairs with
// atom norm >= 1/4 are split off and composed by direct multiplication.
JostFunction perturb_logexp(const JostFunction& f_o, const ShiftSet& s,
                            const PerturbOptions& opts = {}, LogExpInfo* info = nullptr);

struct StabilityPoint {
    double scale = 0.0;
    double l1 = 0.0;     // scale * ||rho||_l1
    double distance = 0.0;
    bool ok = false;
    std::string note;
};

// Distances metric_J(f_t, f_o) for the scaled shift sets; invalid scales are
// skipped with a note.
std::vector<StabilityPoint> stability_curve(const JostFunction& f_o, const ShiftSet& s,
                                            const std::vector<double>& scales);

} // namespace diracres

#endif
