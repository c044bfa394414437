#include "diracres/inverse.hpp"

#include "propagator.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace diracres {

Potential born_init(const JostFunction& f, std::size_t n_cells) {
    const double gamma = f.gamma;
    std::vector<cx> cells(n_cells);
    const double w = gamma / (double)n_cells;
    const double ds = f.step();
    for (std::size_t j = 0; j < n_cells; ++j) {
        const double x = ((double)j + 0.5) * w;
        const double u = x / ds;
        const std::size_t m0 = std::min((std::size_t)u, f.n_nodes() - 2);
        const double t = u - (double)m0;
        const cx g = f.g_samples[m0] * (1.0 - t) + f.g_samples[m0 + 1] * t;
        cells[j] = std::conj(g);
    }
    return Potential(gamma, std::move(cells));
}

namespace {

// psi(k) and d psi / d(Re q_j, Im q_j) via prefix/suffix transfer products
void psi_row(const Potential& q, double k, cx& val, cx* grad /* 2*n or nullptr */) {
    const std::size_t n = q.n_cells();
    const double dx = q.step();
    const cx z(k, 0.0);
    std::vector<std::array<cx, 4>> E(n), dEa, dEb;
    if (grad) {
        dEa.resize(n);
        dEb.resize(n);
    }
    for (std::size_t j = 0; j < n; ++j) {
        cx Em[2][2], Ea[2][2], Eb[2][2];
        if (grad) {
            detail::cell_propagator_grad(q.samples[j], z, dx, Em, Ea, Eb);
            dEa[j] = {Ea[0][0], Ea[0][1], Ea[1][0], Ea[1][1]};
            dEb[j] = {Eb[0][0], Eb[0][1], Eb[1][0], Eb[1][1]};
        } else {
            detail::cell_propagator(q.samples[j], z, dx, Em);
        }
        E[j] = {Em[0][0], Em[0][1], Em[1][0], Em[1][1]};
    }
    // suffix products: suf[j] = E_j ... E_{n-1} D
    std::vector<std::array<cx, 4>> suf(n + 1);
    const cx e = std::exp(cx(0.0, 1.0) * z * q.gamma);
    suf[n] = {e, 0.0, 0.0, 1.0 / e};
    for (std::size_t j = n; j-- > 0;) {
        const auto& A = E[j];
        const auto& B = suf[j + 1];
        suf[j] = {A[0] * B[0] + A[1] * B[2], A[0] * B[1] + A[1] * B[3],
                  A[2] * B[0] + A[3] * B[2], A[2] * B[1] + A[3] * B[3]};
    }
    val = suf[0][0] - suf[0][2];
    if (!grad) return;
    // prefix products pre[j] = E_0 ... E_{j-1}; psi-derivative needs the first
    // column of pre[j] * dE_j * suf[j+1] combined as row (1,-1) * ... * col 1
    std::array<cx, 4> pre = {1.0, 0.0, 0.0, 1.0};
    for (std::size_t j = 0; j < n; ++j) {
        // row vector r = (1,-1) * pre
        const cx r0 = pre[0] - pre[2], r1 = pre[1] - pre[3];
        // column vector c = suf[j+1] * e1 (first column)
        const auto& S = suf[j + 1];
        const cx c0 = S[0], c1 = S[2];
        const auto apply = [&](const std::array<cx, 4>& D) {
            return r0 * (D[0] * c0 + D[1] * c1) + r1 * (D[2] * c0 + D[3] * c1);
        };
        grad[2 * j] = apply(dEa[j]);
        grad[2 * j + 1] = apply(dEb[j]);
        const auto& A = E[j];
        pre = {pre[0] * A[0] + pre[1] * A[2], pre[0] * A[1] + pre[1] * A[3],
               pre[2] * A[0] + pre[3] * A[2], pre[2] * A[1] + pre[3] * A[3]};
    }
}

} // namespace

std::pair<Potential, ReconReport> reconstruct(const JostFunction& f_target,
                                              const ReconstructionOptions& opts) {
    if (opts.max_iters < 1) throw validation_error("reconstruct: max_iters must be >= 1");
    if (!(opts.tol_residual > 0) || !(opts.tol_step > 0))
        throw validation_error("reconstruct: tolerances must be positive");
    if (opts.check_target && !f_target.verified) {
        JostFunction probe = f_target;
        Report rep = verify_jost(probe);
        if (!rep.passed)
            throw validation_error("reconstruct: target fails verify_jost");
    }
    const double gamma = f_target.gamma;
    const std::size_t n = opts.n_cells;
    const double k_max = opts.k_max > 0 ? opts.k_max : PI * (double)n / (2.0 * gamma);
    const std::size_t nk = opts.n_k;
    const double dk = 2.0 * k_max / (double)nk;

    // target values on the residual grid
    std::vector<cx> target(nk);
    parallel_for(nk, [&](std::size_t j) {
        target[j] = eval(f_target, cx(-k_max + dk * (double)j, 0.0));
    });

    Potential q = [&] {
        switch (opts.init) {
            case ReconInit::born: return born_init(f_target, n);
            case ReconInit::zero: return Potential(gamma, std::vector<cx>(n, 0.0));
            case ReconInit::supplied:
                if (opts.supplied.n_cells() == 0)
                    throw validation_error("reconstruct: supplied init missing");
                return opts.supplied.n_cells() == n ? opts.supplied : opts.supplied.resampled(n);
        }
        throw validation_error("reconstruct: bad init");
    }();

    auto residual_norm = [&](const Potential& qq) {
        std::vector<double> parts(nk);
        parallel_for(nk, [&](std::size_t j) {
            cx v;
            psi_row(qq, -k_max + dk * (double)j, v, nullptr);
            parts[j] = std::norm(v - target[j]);
        });
        double s = 0.0;
        for (double p : parts) s += p;
        return s * dk / PI;
    };

    ReconReport rep;
    double R = residual_norm(q);
    rep.residual_history.push_back(R);
    double lambda = opts.damping;

    Eigen::MatrixXd JtJ(2 * n, 2 * n);
    Eigen::VectorXd Jtr(2 * n);
    std::vector<cx> grads(nk * 2 * n);
    std::vector<cx> vals(nk);

    for (std::size_t it = 0; it < opts.max_iters; ++it) {
        if (R < opts.tol_residual) {
            rep.converged = true;
            break;
        }
        parallel_for(nk, [&](std::size_t j) {
            psi_row(q, -k_max + dk * (double)j, vals[j], &grads[j * 2 * n]);
        });
        // normal equations of the real-stacked least squares
        JtJ.setZero();
        Jtr.setZero();
        for (std::size_t j = 0; j < nk; ++j) {
            const cx r = vals[j] - target[j];
            const cx* g = &grads[j * 2 * n];
            for (std::size_t a = 0; a < 2 * n; ++a) {
                Jtr((Eigen::Index)a) += g[a].real() * r.real() + g[a].imag() * r.imag();
                for (std::size_t b = a; b < 2 * n; ++b)
                    JtJ((Eigen::Index)a, (Eigen::Index)b) +=
                        g[a].real() * g[b].real() + g[a].imag() * g[b].imag();
            }
        }
        JtJ = JtJ.selfadjointView<Eigen::Upper>();

        bool accepted = false;
        for (int tries = 0; tries < 12 && !accepted; ++tries) {
            Eigen::MatrixXd M = JtJ;
            for (std::size_t a = 0; a < 2 * n; ++a)
                M((Eigen::Index)a, (Eigen::Index)a) += lambda;
            Eigen::VectorXd step = M.ldlt().solve(-Jtr);
            Potential q_new = q;
            double qn = 0.0, sn = 0.0;
            for (std::size_t c = 0; c < n; ++c) {
                q_new.samples[c] += cx(step((Eigen::Index)(2 * c)), step((Eigen::Index)(2 * c + 1)));
                qn += std::norm(q.samples[c]);
                sn += step((Eigen::Index)(2 * c)) * step((Eigen::Index)(2 * c)) +
                      step((Eigen::Index)(2 * c + 1)) * step((Eigen::Index)(2 * c + 1));
            }
            const double R_new = residual_norm(q_new);
            if (R_new < R) {
                q = q_new;
                R = R_new;
                lambda = std::max(lambda / 2.0, 1e-12);
                accepted = true;
                rep.residual_history.push_back(R);
                rep.iterations = it + 1;
                if (std::sqrt(sn * q.step()) < opts.tol_step * (1.0 + std::sqrt(qn * q.step()))) {
                    rep.converged = true;
                    it = opts.max_iters;  // step criterion met
                }
            } else {
                lambda *= 4.0;
            }
        }
        if (!accepted) break;  // damping exhausted; report best iterate
        if (R < opts.tol_residual) rep.converged = true;
    }
    if (R < opts.tol_residual) rep.converged = true;
    rep.final_residual = R;
    return {q, rep};
}

StabilityExperimentReport stability_experiment(const Potential& q_o, const ShiftSet& s,
                                               const std::vector<double>& scales,
                                               const StabilityExperimentOptions& opts) {
    StabilityExperimentReport rep;
    JostFunction f_o = jost_profile(q_o, opts.profile_k_max, opts.profile_n_k);
    {
        Report v = verify_jost(f_o);
        if (!v.passed) throw validation_error("stability_experiment: forward profile fails verify_jost");
    }
    {
        const ShiftValidation v = validate_shifts(f_o, s);
        if (!v.report.passed)
            throw validation_error("stability_experiment: shifts do not validate against forward(q_o)");
    }
    const double l1 = s.l1_norm();
    bool largest_done = false;
    for (double t : scales) {
        StabilityExperimentPoint pt;
        pt.scale = t;
        pt.l1 = t * l1;
        try {
            PerturbOptions po;
            po.run_verify = false;
            JostFunction f_t = t == 0.0 ? f_o : perturb_multiplier(f_o, s.scaled(t), po);
            f_t.verified = f_o.verified;
            ReconstructionOptions ro = opts.recon;
            ro.check_target = false;
            auto [q_t, rr] = reconstruct(f_t, ro);
            pt.distance = metric_P(q_t, q_o, true);
            pt.ok = true;
            if (!largest_done && t > 0.0) {
                // uniqueness witness: rerun from the zero init at the largest scale
                ReconstructionOptions rz = ro;
                rz.init = ReconInit::zero;
                rz.max_iters = std::max<std::size_t>(ro.max_iters, 25);
                auto [q_z, rr2] = reconstruct(f_t, rz);
                rep.init_agreement = metric_P(q_t, q_z);
                largest_done = true;
            }
        } catch (const Error& e) {
            pt.note = e.what();
            pt.ok = false;
        }
        rep.curve.push_back(pt);
    }
    return rep;
}

} // namespace diracres
