#include "diracres/perturb.hpp"

#include <algorithm>
#include <cmath>

namespace diracres {

double ShiftSet::l1_norm() const {
    double s = 0.0;
    for (const auto& p : pairs) s += std::abs(p.rho);
    return s;
}

ShiftSet ShiftSet::scaled(double t) const {
    ShiftSet out = *this;
    for (auto& p : out.pairs) p.rho *= t;
    out.declared_tail_l1 *= t;
    return out;
}

ShiftValidation validate_shifts(const JostFunction& f_o, const ShiftSet& s) {
    ShiftValidation out;
    out.l1 = s.l1_norm();
    bool zeros_ok = true, halfplane_ok = true;
    double worst_match = 0.0;
    for (const auto& p : s.pairs) {
        const double scale = std::exp(2.0 * f_o.gamma * std::abs(p.k_old.imag()));
        const double resid = std::abs(eval(f_o, p.k_old)) / scale;
        worst_match = std::max(worst_match, resid);
        if (resid >= 1e-4) zeros_ok = false;
        if (!(p.k_old.imag() < 0.0) || !((p.k_old + p.rho).imag() < 0.0)) halfplane_ok = false;
        const double y = std::abs(p.k_old.imag());
        if (y > 0.0) out.C1 = std::max(out.C1, (1.0 + 1.0 / std::sqrt(y)) / std::sqrt(y));
    }
    out.report.add("k_old_are_zeros", zeros_ok, worst_match, "scaled residual, match_tol 1e-4");
    out.report.add("shifts_stay_in_lower_half_plane", halfplane_ok);
    out.report.add("l1_norm", true, out.l1);
    out.report.add("C1", true, out.C1);
    return out;
}

namespace {

void require_valid(const JostFunction& f_o, const ShiftSet& s) {
    const ShiftValidation v = validate_shifts(f_o, s);
    if (const CheckItem* it = v.report.find("shifts_stay_in_lower_half_plane"); it && !it->passed)
        throw validation_error("perturb: a shifted zero lands in the closed upper half-plane");
    if (const CheckItem* it = v.report.find("k_old_are_zeros"); it && !it->passed)
        throw validation_error("perturb: a k_old is not a zero of the source Jost function");
}

// combine f = f_o * w (w has c == 1): profile g_o + h + g_o * h on [0, 2 gamma],
// truncated to [0, gamma] with the discarded relative energy recorded as leakage.
JostFunction combine_with_multiplier(const JostFunction& f_o, const std::vector<cx>& h,
                                     double leak_tol) {
    const std::size_t N = f_o.n_nodes() - 1;
    const std::size_t n_out = 2 * N + 1;
    const double ds = f_o.step();
    std::vector<cx> conv = convolve(f_o.g_samples, h, ds, n_out);
    std::vector<cx> full(n_out, 0.0);
    for (std::size_t m = 0; m < n_out; ++m) {
        cx v = conv[m] + h[m];
        if (m <= N) v += f_o.g_samples[m];
        full[m] = v;
    }
    double tot = 0.0, outside = 0.0;
    for (std::size_t m = 0; m < n_out; ++m) {
        const double e = std::norm(full[m]);
        tot += e;
        if (m > N) outside += e;
    }
    const double leakage = tot > 0 ? outside / tot : 0.0;
    if (leakage > leak_tol)
        throw numerical_error("perturb: out-of-support leakage " + std::to_string(leakage) +
                              " above tolerance");
    std::vector<cx> nodes(full.begin(), full.begin() + (std::ptrdiff_t)(N + 1));
    return JostFunction(f_o.gamma, std::move(nodes), leakage);
}

void post_verify(JostFunction& f, bool run_verify) {
    if (!run_verify) return;
    Report rep = verify_jost(f);
    if (!rep.passed) {
        std::string what = "perturb: output failed verify_jost:";
        for (const auto& it : rep.items)
            if (!it.passed) what += " " + it.name;
        throw numerical_error(what);
    }
}

} // namespace

JostFunction perturb_multiplier(const JostFunction& f_o, const ShiftSet& s,
                                const PerturbOptions& opts) {
    if (s.pairs.empty()) {
        JostFunction out = f_o;
        return out;
    }
    require_valid(f_o, s);
    const std::size_t N = f_o.n_nodes() - 1;
    const std::size_t n_out = 2 * N + 1;
    const double ds = f_o.step();

    // multiplier profile: atoms composed in the algebra, all exact kernels
    std::vector<cx> acc;
    for (const auto& p : s.pairs) {
        WienerElement a = atom_on_grid(p.k_old, p.rho, ds, n_out);
        if (acc.empty()) {
            acc = a.h;
        } else {
            std::vector<cx> cross = convolve(acc, a.h, ds, n_out);
            for (std::size_t m = 0; m < n_out; ++m) acc[m] += a.h[m] + cross[m];
        }
    }
    JostFunction out = combine_with_multiplier(f_o, acc, opts.leak_tol);
    post_verify(out, opts.run_verify);
    return out;
}

JostFunction perturb_logexp(const JostFunction& f_o, const ShiftSet& s,
                            const PerturbOptions& opts, LogExpInfo* info) {
    if (s.pairs.empty()) {
        JostFunction out = f_o;
        if (info) *info = {};
        return out;
    }
    require_valid(f_o, s);
    const ShiftValidation v = validate_shifts(f_o, s);
    const std::size_t N = f_o.n_nodes() - 1;
    const std::size_t n_out = 2 * N + 1;
    const double ds = f_o.step();

    // split off pairs whose atom norm reaches 1/4 (the paper's N threshold)
    std::vector<ShiftPair> small, big;
    for (const auto& p : s.pairs) {
        const double y = std::abs(p.k_old.imag());
        const double an = std::abs(p.rho) / std::sqrt(y) * (1.0 + 1.0 / std::sqrt(y));
        (an < 0.25 ? small : big).push_back(p);
    }

    WienerElement F;
    F.c = 0.0;
    F.step = ds;
    F.h.assign(n_out, 0.0);
    for (const auto& p : small) {
        WienerElement al = atom_log_on_grid(p.k_old, p.rho, ds, n_out);
        for (std::size_t m = 0; m < n_out; ++m) F.h[m] += al.h[m];
        F.tail_bound += al.tail_bound;
    }

    LogExpInfo li;
    li.split_off = big.size();
    li.bound_applicable = big.empty();
    li.norm_F = wiener_norm(F);
    li.bound = 2.78 * v.C1 * v.l1;
    li.bound_ok = li.bound_applicable && li.norm_F <= li.bound;
    li.tail_report = 2.78 * v.C1 * s.declared_tail_l1;

    WienerElement w = small.empty() ? wiener_unit(ds, n_out) : exp_element(F);
    for (const auto& p : big) w = multiply(w, atom_on_grid(p.k_old, p.rho, ds, n_out));

    JostFunction out = combine_with_multiplier(f_o, w.h, opts.leak_tol);
    post_verify(out, opts.run_verify);
    if (info) *info = li;
    return out;
}

std::vector<StabilityPoint> stability_curve(const JostFunction& f_o, const ShiftSet& s,
                                            const std::vector<double>& scales) {
    std::vector<StabilityPoint> out;
    const double l1 = s.l1_norm();
    for (double t : scales) {
        StabilityPoint pt;
        pt.scale = t;
        pt.l1 = t * l1;
        if (t == 0.0) {
            pt.distance = 0.0;
            pt.ok = true;
            out.push_back(pt);
            continue;
        }
        try {
            PerturbOptions po;
            po.run_verify = false;  // distances only; callers verify the endpoints
            JostFunction f_t = perturb_multiplier(f_o, s.scaled(t), po);
            pt.distance = metric_J(f_t, f_o);
            pt.ok = true;
        } catch (const Error& e) {
            pt.note = e.what();
            pt.ok = false;
        }
        out.push_back(pt);
    }
    return out;
}

} // namespace diracres
