#include "diracres/potential.hpp"

#include <cmath>

namespace diracres {

Potential::Potential(double gamma_, std::vector<cx> cells)
    : gamma(gamma_), samples(std::move(cells)) {
    if (!(gamma > 0.0)) throw validation_error("potential: gamma must be positive");
    if (samples.empty()) throw validation_error("potential: no cells");
    for (std::size_t j = 0; j < samples.size(); ++j)
        if (!finite(samples[j]))
            throw validation_error("potential: non-finite sample at cell " + std::to_string(j));
}

double Potential::norm_l2() const {
    double s = 0.0;
    for (const cx& v : samples) s += std::norm(v);
    return std::sqrt(s * step());
}

Potential Potential::resampled(std::size_t n) const {
    if (n == 0) throw validation_error("resample: zero cells");
    std::vector<cx> out(n, 0.0);
    const double w_old = step(), w_new = gamma / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double lo = i * w_new, hi = lo + w_new;
        cx acc = 0.0;
        std::size_t j0 = static_cast<std::size_t>(lo / w_old);
        for (std::size_t j = j0; j < samples.size(); ++j) {
            const double a = j * w_old, b = a + w_old;
            if (a >= hi) break;
            const double ov = std::min(b, hi) - std::max(a, lo);
            if (ov > 0) acc += samples[j] * ov;
        }
        out[i] = acc / w_new;
    }
    return Potential(gamma, std::move(out));
}

double metric_P(const Potential& q1, const Potential& q2, bool allow_resample) {
    if (std::abs(q1.gamma - q2.gamma) > 1e-12 * std::max(q1.gamma, q2.gamma))
        throw validation_error("metric_P: incompatible domains (gamma mismatch)");
    const Potential* a = &q1;
    const Potential* b = &q2;
    Potential tmp;
    if (q1.n_cells() != q2.n_cells()) {
        if (!allow_resample)
            throw validation_error("metric_P: grids differ; pass allow_resample to compare");
        if (q1.n_cells() < q2.n_cells()) {
            tmp = q1.resampled(q2.n_cells());
            a = &tmp;
        } else {
            tmp = q2.resampled(q1.n_cells());
            b = &tmp;
        }
    }
    double s = 0.0;
    for (std::size_t j = 0; j < a->n_cells(); ++j) s += std::norm(a->samples[j] - b->samples[j]);
    return std::sqrt(s * a->step());
}

Report validate_membership(const Potential& q, const MembershipOptions& opts) {
    Report rep;
    bool all_finite = true;
    for (const cx& v : q.samples)
        if (!finite(v)) { all_finite = false; break; }
    rep.add("finite", all_finite);

    const double nq = q.norm_l2();
    rep.add("nonzero_norm", nq > 0.0, nq);

    // effective support: L2 mass on [gamma-delta, gamma] must exceed support_tol*||q||
    const double delta = opts.delta_cells * q.step();
    const std::size_t j0 = q.n_cells() - std::min<std::size_t>(q.n_cells(), (std::size_t)opts.delta_cells);
    double tail = 0.0;
    for (std::size_t j = j0; j < q.n_cells(); ++j) tail += std::norm(q.samples[j]);
    tail = std::sqrt(tail * q.step());
    const bool ok = nq > 0.0 && tail > opts.support_tol * nq;
    rep.add("effective_support", ok, tail,
            "window delta=" + std::to_string(delta));
    return rep;
}

} // namespace diracres
