#include "diracres/jost.hpp"

#include "diracres/contour.hpp"

#include <cmath>

namespace diracres {

JostFunction::JostFunction(double gamma_, std::vector<cx> nodes, double leakage_)
    : gamma(gamma_), g_samples(std::move(nodes)), leakage(leakage_) {
    if (!(gamma > 0.0)) throw validation_error("jost: gamma must be positive");
    if (g_samples.size() < 2) throw validation_error("jost: need at least 2 profile nodes");
    for (std::size_t m = 0; m < g_samples.size(); ++m)
        if (!finite(g_samples[m]))
            throw validation_error("jost: non-finite profile node " + std::to_string(m));
}

namespace {

// Weighted sum over nodes with kernel r^m, r = e^{2 i z step}; extra[m] optional
// polynomial factor (s_m for the derivative kernel).
cx profile_sum(const JostFunction& f, cx z, bool with_s) {
    const std::size_t n = f.n_nodes();
    const double ds = f.step();
    const auto w = gregory_weights(n);
    const cx r = std::exp(cx(0.0, 2.0) * z * ds);
    cx phase = 1.0, acc = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        cx term = w[m] * f.g_samples[m] * phase;
        if (with_s) term *= cx(0.0, 2.0) * (ds * (double)m);
        acc += term;
        phase *= r;
    }
    return acc * ds;
}

} // namespace

cx eval(const JostFunction& f, cx z) {
    if (!finite(z)) throw validation_error("eval: non-finite z");
    if (2.0 * f.gamma * std::abs(z.imag()) > EVAL_IM_GUARD)
        throw Error(ErrorKind::numerical, "eval: 2 gamma |Im z| exceeds overflow guard");
    return 1.0 + profile_sum(f, z, false);
}

cx eval_derivative(const JostFunction& f, cx z) {
    if (!finite(z)) throw validation_error("eval: non-finite z");
    if (2.0 * f.gamma * std::abs(z.imag()) > EVAL_IM_GUARD)
        throw Error(ErrorKind::numerical, "eval: 2 gamma |Im z| exceeds overflow guard");
    return profile_sum(f, z, true);
}

double metric_J(const JostFunction& f1, const JostFunction& f2) {
    if (std::abs(f1.gamma - f2.gamma) > 1e-12 * std::max(f1.gamma, f2.gamma))
        throw validation_error("metric_J: incompatible domains (gamma mismatch)");
    if (f1.n_nodes() != f2.n_nodes())
        throw validation_error("metric_J: incompatible grids");
    std::vector<cx> diff(f1.n_nodes());
    for (std::size_t m = 0; m < diff.size(); ++m) diff[m] = f1.g_samples[m] - f2.g_samples[m];
    return std::sqrt(quad_abs2(diff, f1.step()));
}

Report verify_jost(const JostFunction& f, const VerifyJostOptions& opts) {
    Report rep;

    // (i) effective support of the profile reaches gamma
    {
        const std::size_t n = f.n_nodes();
        const std::size_t j0 = n - std::min<std::size_t>(n, (std::size_t)opts.delta_cells + 1);
        double tail = 0.0, tot = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
            tot += std::norm(f.g_samples[m]);
            if (m >= j0) tail += std::norm(f.g_samples[m]);
        }
        tail = std::sqrt(tail * f.step());
        tot = std::sqrt(tot * f.step());
        rep.add("support_reaches_gamma", tot > 0.0 && tail > opts.support_tol * tot, tail);
    }

    // (iii) inf |psi| on a real grid (done before (ii): a real zero would break the contour)
    double inf_abs = std::numeric_limits<double>::infinity();
    {
        const double half = opts.real_halfwidth_factor / f.gamma;
        const std::size_t n = opts.real_grid;
        std::vector<double> mags(n);
        parallel_for(n, [&](std::size_t i) {
            const double k = -half + 2.0 * half * (double)i / (double)(n - 1);
            mags[i] = std::abs(eval(f, cx(k, 0.0)));
        });
        for (double m : mags) inf_abs = std::min(inf_abs, m);
        rep.add("real_line_floor", inf_abs > opts.real_floor, inf_abs);
    }

    // (ii) argument-principle count over growing upper rectangles must be 0.
    {
        auto fn = [&](cx z) { return eval(f, z); };
        auto dn = [&](cx z) { return eval_derivative(f, z); };
        double R = 20.0 / f.gamma;
        int count = 0;
        double resid = 0.0;
        bool settled = false;
        for (int pass = 0; pass < 6 && !settled; ++pass, R *= 2.0) {
            if (2.0 * f.gamma * R > EVAL_IM_GUARD) break;
            Rect rect{-R, R, 0.0, R};
            WindingResult wr = count_zeros_contour(fn, dn, rect);
            count = wr.count;
            resid = wr.residual;
            // top-edge contribution estimate: |psi - 1| at the top corners
            const double top_dev = std::max(std::abs(eval(f, cx(-R, R)) - 1.0),
                                            std::abs(eval(f, cx(R, R)) - 1.0));
            settled = top_dev < opts.boundary_tol;
            if (count != 0) break;
        }
        rep.add("no_zeros_upper_half", count == 0, (double)count,
                "residual=" + std::to_string(resid));
    }
    return rep;
}

Report verify_jost(JostFunction& f, const VerifyJostOptions& opts) {
    Report rep = verify_jost(static_cast<const JostFunction&>(f), opts);
    if (rep.passed) f.verified = true;
    return rep;
}

} // namespace diracres
