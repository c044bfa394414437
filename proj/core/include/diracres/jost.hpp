#ifndef DIRACRES_JOST_HPP
#define DIRACRES_JOST_HPP

#include "diracres/common.hpp"
#include "diracres/potential.hpp"

namespace diracres {

// Jost function psi = 1 + F g with profile g supported on [0, gamma], stored as
// nodal values g_samples[m] = g(m*step), m = 0..N, step*N == gamma.
struct JostFunction {
    double gamma = 0.0;
    std::vector<cx> g_samples;
    double leakage = 0.0;   // recorded transform leakage; 0 for analytic profiles
    bool verified = false;  // set by verify_jost on success

    JostFunction() = default;
    JostFunction(double gamma_, std::vector<cx> nodes, double leakage_ = 0.0);

    std::size_t n_nodes() const { return g_samples.size(); }
    double step() const { return gamma / static_cast<double>(g_samples.size() - 1); }
};

// Overflow guard for the e^{2 gamma |Im z|} factor in the evaluator.
constexpr double EVAL_IM_GUARD = 650.0;

// 1 + quadrature of int_0^gamma g(s) e^{2izs} ds (Gregory order-4 weights).
cx eval(const JostFunction& f, cx z);

// d/dz of eval, by differentiating under the integral (kernel 2is g(s) e^{2izs}).
cx eval_derivative(const JostFunction& f, cx z);

// L2(0,gamma) distance between profiles.
double metric_J(const JostFunction& f1, const JostFunction& f2);

struct VerifyJostOptions {
    double support_tol = 1e-6;       // as in potential membership
    double delta_cells = 4.0;
    double real_floor = 1e-8;        // required inf |psi| on the real grid
    double real_halfwidth_factor = 50.0;  // real grid spans [-f/gamma, f/gamma]
    std::size_t real_grid = 8192;
    double boundary_tol = 1e-3;      // stop growing R when top-edge contribution is below this
};

// Three checks: profile support reaches gamma; argument-principle zero count over
// growing upper rectangles equals 0; inf |psi| on a real grid above the floor.
// Marks f.verified on success.
Report verify_jost(JostFunction& f, const VerifyJostOptions& opts = {});
Report verify_jost(const JostFunction& f, const VerifyJostOptions& opts);

} // namespace diracres

#endif
