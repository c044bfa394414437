#include "diracres/forward.hpp"

#include "diracres/fft.hpp"
#include "propagator.hpp"

#include <cmath>

namespace diracres {

namespace {

bool mat_finite(const cx M[2][2]) {
    return finite(M[0][0]) && finite(M[0][1]) && finite(M[1][0]) && finite(M[1][1]);
}

} // namespace

JostMatrix jost_solution(const Potential& q, cx z) {
    if (!finite(z)) throw validation_error("jost_solution: non-finite z");
    const std::size_t n = q.n_cells();
    const double dx = q.step();
    JostMatrix out;
    out.z = z;
    cx F[2][2] = {{std::exp(cx(0.0, 1.0) * z * q.gamma), 0.0},
                  {0.0, std::exp(cx(0.0, -1.0) * z * q.gamma)}};
    cx E[2][2], T[2][2];
    for (std::size_t jj = n; jj-- > 0;) {
        detail::cell_propagator(q.samples[jj], z, dx, E);
        detail::mat_mul(E, F, T);
        F[0][0] = T[0][0]; F[0][1] = T[0][1]; F[1][0] = T[1][0]; F[1][1] = T[1][1];
    }
    if (!mat_finite(F)) {
        // rescan with per-cell checks to name the offending cell
        cx G[2][2] = {{std::exp(cx(0.0, 1.0) * z * q.gamma), 0.0},
                      {0.0, std::exp(cx(0.0, -1.0) * z * q.gamma)}};
        if (!mat_finite(G))
            throw numerical_error("jost_solution: overflow in the boundary value e^{iz gamma sigma3}");
        for (std::size_t jj = n; jj-- > 0;) {
            detail::cell_propagator(q.samples[jj], z, dx, E);
            detail::mat_mul(E, G, T);
            G[0][0] = T[0][0]; G[0][1] = T[0][1]; G[1][0] = T[1][0]; G[1][1] = T[1][1];
            if (!mat_finite(G))
                throw numerical_error("jost_solution: overflow while propagating through cell " +
                                      std::to_string(jj));
        }
        throw numerical_error("jost_solution: non-finite result");
    }
    out.entries[0][0] = F[0][0]; out.entries[0][1] = F[0][1];
    out.entries[1][0] = F[1][0]; out.entries[1][1] = F[1][1];
    return out;
}

cx jost_function(const Potential& q, cx z) {
    const JostMatrix f = jost_solution(q, z);
    return f.entries[0][0] - f.entries[1][0];
}

JostFunction jost_profile(const Potential& q, double k_max, std::size_t n_k,
                          const ProfileOptions& opts) {
    if (!(k_max > 0)) throw validation_error("jost_profile: k_max must be positive");
    if (n_k < 16 || (n_k & (n_k - 1)) != 0)
        throw validation_error("jost_profile: n_k must be a power of two (>= 16)");
    const double gamma = q.gamma;
    // snap k_max so the transform step ds = pi/(2 k_max) divides gamma exactly
    const std::size_t N = (std::size_t)std::lround(2.0 * k_max * gamma / PI);
    if (N < 8) throw validation_error("jost_profile: k_max too small to resolve [0,gamma]");
    const double ds = gamma / (double)N;
    const double kme = PI / (2.0 * ds);
    const double dk = 2.0 * kme / (double)n_k;
    if ((double)n_k * ds < 2.0 * gamma)
        throw validation_error("jost_profile: transform window shorter than 2*gamma; raise n_k");

    // sample psi - 1 on the k grid
    std::vector<cx> h(n_k);
    parallel_for(n_k, [&](std::size_t j) {
        const double k = -kme + dk * (double)j;
        h[j] = jost_function(q, cx(k, 0.0)) - 1.0;
    });

    // endpoint smoothing: fit u = 2ik(psi-1) ~ b + a e^{2ik gamma} on the top band
    cx a = 0.0, b = 0.0;
    const double beta = opts.smoothing_beta_over_gamma / gamma;
    if (opts.endpoint_smoothing) {
        cx see = 0.0, se1 = 0.0, s11 = 0.0, sue = 0.0, su1 = 0.0;
        for (std::size_t j = 0; j < n_k; ++j) {
            const double k = -kme + dk * (double)j;
            if (std::abs(k) < opts.fit_band * kme) continue;
            const cx u = cx(0.0, 2.0) * k * h[j];
            const cx e = std::exp(cx(0.0, 2.0) * k * gamma);
            see += std::norm(e); se1 += std::conj(e); s11 += 1.0;
            sue += std::conj(e) * u; su1 += u;
        }
        const cx det = see * s11 - se1 * std::conj(se1);
        if (std::abs(det) > 1e-12) {
            a = (sue * s11 - se1 * su1) / det;
            b = (see * su1 - std::conj(se1) * sue) / det;
        }
        for (std::size_t j = 0; j < n_k; ++j) {
            const double k = -kme + dk * (double)j;
            const cx Bk = 1.0 / (cx(0.0, 2.0) * cx(k, beta));
            const cx Ak = std::exp(cx(0.0, 2.0) * k * gamma) / (cx(0.0, 2.0) * cx(k, -beta));
            h[j] -= b * Bk + a * Ak;
        }
    }

    fft(h, false);
    std::vector<cx>& g = h;
    const double scale = dk / PI;
    for (std::size_t m = 0; m < n_k; ++m) {
        g[m] *= scale;
        if (m & 1) g[m] = -g[m];
    }
    if (opts.endpoint_smoothing) {
        for (std::size_t m = 0; m < n_k; ++m) {
            const double s = ds * (double)m;
            g[m] += -b * std::exp(-2.0 * beta * s);
            if (s <= gamma) g[m] += a * std::exp(-2.0 * beta * (gamma - s));
        }
    }

    double tot = 0.0, out_mass = 0.0;
    for (std::size_t m = 0; m < n_k; ++m) {
        const double e = std::norm(g[m]);
        tot += e;
        if (m > N) out_mass += e;
    }
    const double leakage = tot > 0 ? out_mass / tot : 0.0;
    if (leakage > opts.leak_tol)
        throw numerical_error("jost_profile: out-of-support leakage " + std::to_string(leakage) +
                              " above tolerance; raise k_max or n_k");

    std::vector<cx> nodes(g.begin(), g.begin() + (std::ptrdiff_t)(N + 1));
    return JostFunction(gamma, std::move(nodes), leakage);
}

cx scattering_matrix(const Potential& q, double z) {
    const cx p = jost_function(q, cx(z, 0.0));
    if (std::abs(p) < 1e-12)
        throw numerical_error("scattering_matrix: |psi| below 1e-12 on the real line (invalid input)");
    return std::conj(p) / p;
}

SMatrixSamples scattering_grid(const Potential& q, double k_max, std::size_t n_k) {
    if (n_k < 16 || (n_k & (n_k - 1)) != 0)
        throw validation_error("scattering_grid: n_k must be a power of two (>= 16)");
    SMatrixSamples s;
    s.k_max = k_max;
    s.gamma = q.gamma;
    s.samples.resize(n_k);
    const double dk = 2.0 * k_max / (double)n_k;
    parallel_for(n_k, [&](std::size_t j) {
        const double k = -k_max + dk * (double)j;
        const cx p = jost_function(q, cx(k, 0.0));
        s.samples[j] = std::conj(p) / p;
    });
    return s;
}

Winding winding_number(const std::vector<cx>& s_samples) {
    if (s_samples.size() < 2) throw validation_error("winding_number: need at least 2 samples");
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < s_samples.size(); ++j) {
        if (s_samples[j] == cx(0.0) || !finite(s_samples[j]))
            throw validation_error("winding_number: invalid sample");
        const double d = std::arg(s_samples[j + 1] / s_samples[j]);
        if (std::abs(d) > PI - 0.15)
            throw numerical_error("winding_number: phase jump >= pi between neighbors (undersampled)");
        total += d;
    }
    // S = e^{-2 i phi}: phi increments are -arg/2, W = (phi_end - phi_start)/pi
    const double w = -total / (2.0 * PI);
    Winding out;
    out.w = (int)std::lround(w);
    out.residual = std::abs(w - (double)out.w);
    return out;
}

Report verify_smatrix(const SMatrixSamples& s, const VerifySMatrixOptions& opts) {
    Report rep;
    const std::size_t n = s.samples.size();
    if (n < 16 || (n & (n - 1)) != 0)
        throw validation_error("verify_smatrix: need a power-of-two symmetric grid");

    double uni_dev = 0.0;
    for (const cx& v : s.samples) uni_dev = std::max(uni_dev, std::abs(std::abs(v) - 1.0));
    rep.add("unimodular", uni_dev < opts.unimodular_tol, uni_dev);

    Winding w = winding_number(s.samples);
    rep.add("winding_zero", w.w == 0, (double)w.w, "residual=" + std::to_string(w.residual));

    // F = F^{-1}(S - 1) on the shifted window [-S/2, S/2)
    std::vector<cx> h(n);
    for (std::size_t j = 0; j < n; ++j) h[j] = s.samples[j] - 1.0;
    fft(h, false);
    const double dk = s.dk();
    const double ds = PI / (2.0 * s.k_max);
    for (std::size_t m = 0; m < n; ++m) {
        h[m] *= dk / PI;
        if (m & 1) h[m] = -h[m];
    }
    const double window = (double)n * ds;
    const double delta = 4.0 * ds;
    double tot = 0.0, below = 0.0, l2_right = 0.0, l1_right = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        double sm = ds * (double)m;
        if (sm >= window / 2) sm -= window;
        const double e = std::norm(h[m]);
        tot += e;
        if (sm < -s.gamma - delta) below += e;
        if (sm >= -s.gamma) {
            l2_right += e;
            l1_right += std::abs(h[m]);
        }
    }
    const double leak = tot > 0 ? below / tot : 0.0;
    rep.add("support_from_minus_gamma", leak < opts.leak_tol, leak,
            "delta=" + std::to_string(delta));
    rep.add("norm_L2_right", true, std::sqrt(l2_right * ds));
    rep.add("norm_L1_right", true, l1_right * ds);
    return rep;
}

} // namespace diracres
