#ifndef DIRACRES_INVERSE_HPP
#define DIRACRES_INVERSE_HPP

#include "diracres/common.hpp"
#include "diracres/forward.hpp"
#include "diracres/jost.hpp"
#include "diracres/perturb.hpp"
#include "diracres/potential.hpp"

namespace diracres {

enum class ReconInit { born, zero, supplied };

struct ReconstructionOptions {
    std::size_t max_iters = 15;
    double damping = 1e-6;        // initial Levenberg damping, ratio-test adapted
    double tol_residual = 1e-10;  // stop when R(q) < tol_residual
    double tol_step = 1e-7;       // stop when the step norm is below tol_step*(1+||q||)
    ReconInit init = ReconInit::born;
    Potential supplied;           // used when init == supplied

    std::size_t n_cells = 128;    // reconstruction grid
    double k_max = 0.0;           // 0 = auto: pi * n_cells / (2 gamma)
    std::size_t n_k = 2048;       // residual grid size
    bool check_target = true;     // reject targets failing verify_jost
};

struct ReconReport {
    std::vector<double> residual_history;  // R(q) per accepted iterate, R = (dk/pi) sum |psi_q - psi_t|^2
    bool converged = false;
    std::size_t iterations = 0;
    double final_residual = 0.0;
};

// q0(s) = conj(g(s)) at the cell midpoints (first-order inversion of the Jost
// integral; psi(z) ~ 1 + int conj(q) e^{2izs} ds for small q).
Potential born_init(const JostFunction& f, std::size_t n_cells);

// Damped Gauss-Newton on the k-grid least squares; Jacobian by analytic forward
// sensitivities of the per-cell propagators (parallel over grid rows).
std::pair<Potential, ReconReport> reconstruct(const JostFunction& f_target,
                                              const ReconstructionOptions& opts = {});

struct StabilityExperimentPoint {
    double scale = 0.0;
    double l1 = 0.0;
    double distance = 0.0;  // metric_P(q_t, q_o)
    bool ok = false;
    std::string note;
};

struct StabilityExperimentReport {
    std::vector<StabilityExperimentPoint> curve;
    double init_agreement = 0.0;  // metric_P between born-init and zero-init solutions at the largest scale
};

struct StabilityExperimentOptions {
    double profile_k_max = 800.0;
    std::size_t profile_n_k = 65536;
    ReconstructionOptions recon;
};

// Full pipeline per scale: forward q_o -> perturb by the scaled shifts ->
// reconstruct -> metric_P distance. Shifts must validate against forward(q_o).
StabilityExperimentReport stability_experiment(const Potential& q_o, const ShiftSet& s,
                                               const std::vector<double>& scales,
                                               const StabilityExperimentOptions& opts = {});

} // namespace diracres

#endif
