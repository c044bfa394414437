#include "diracres/entire.hpp"

#include <algorithm>
#include <cmath>

namespace diracres {

HadamardData::HadamardData(std::vector<cx> zeros_, cx C_, double kappa_, std::size_t p_)
    : zeros(std::move(zeros_)), C(C_), kappa(kappa_), p(p_) {
    for (const cx& k : zeros)
        if (std::abs(k) == 0.0) throw validation_error("hadamard: zeros at the origin go into p");
    std::stable_sort(zeros.begin(), zeros.end(), [](cx a, cx b) {
        if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

HadamardValue hadamard_eval(const HadamardData& h, cx k, double r_trunc) {
    if (h.zeros.empty() && h.p == 0 && h.C == cx(0.0))
        throw validation_error("hadamard_eval: degenerate data (no zeros, p = 0, C = 0)");
    HadamardValue out;
    cx prod = h.C * std::exp(cx(0.0, 1.0) * h.kappa * k);
    for (std::size_t i = 0; i < h.p; ++i) prod *= k;
    cx tail_sum = 0.0;
    for (const cx& kn : h.zeros) {
        if (std::abs(kn) <= r_trunc) {
            prod *= (1.0 - k / kn);
            ++out.factors_used;
        } else {
            tail_sum += 1.0 / kn;
        }
    }
    out.value = prod;
    out.tail_estimate = std::abs(k * tail_sum);
    return out;
}

std::size_t counting_function(const std::vector<cx>& zeros, double r) {
    std::size_t n = 0;
    for (const cx& k : zeros)
        if (std::abs(k) <= r) ++n;
    return n;
}

LevinsonFit levinson_slope(const std::vector<cx>& zeros, double r_min, double r_max,
                           std::size_t n_radii) {
    if (!(r_min > 0) || !(r_max > r_min))
        throw validation_error("levinson_slope: need 0 < r_min < r_max");
    n_radii = std::max<std::size_t>(n_radii, 20);
    LevinsonFit fit;
    fit.n_radii = n_radii;
    const double q = std::pow(r_max / r_min, 1.0 / (double)(n_radii - 1));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> rs(n_radii), ns(n_radii);
    double r = r_min;
    for (std::size_t i = 0; i < n_radii; ++i, r *= q) {
        rs[i] = r;
        ns[i] = (double)counting_function(zeros, r);
        sx += rs[i]; sy += ns[i]; sxx += rs[i] * rs[i]; sxy += rs[i] * ns[i];
    }
    const double det = (double)n_radii * sxx - sx * sx;
    if (std::abs(det) < 1e-30) throw validation_error("levinson_slope: degenerate fit");
    fit.slope = ((double)n_radii * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / (double)n_radii;
    double ss = 0;
    for (std::size_t i = 0; i < n_radii; ++i) {
        const double d = ns[i] - (fit.slope * rs[i] + fit.intercept);
        ss += d * d;
    }
    fit.residual = std::sqrt(ss / (double)n_radii);
    return fit;
}

namespace {

bool quartile_growth(const std::vector<double>& v, double factor) {
    if (v.size() < 8) return false;
    const std::size_t q = v.size() / 4;
    double first = 0, last = 0;
    for (std::size_t i = 0; i < q; ++i) first += std::abs(v[i]);
    for (std::size_t i = v.size() - q; i < v.size(); ++i) last += std::abs(v[i]);
    first /= (double)q;
    last /= (double)q;
    return last > factor * first + 1e-30;
}

} // namespace

LindelofReport lindelof_check(const std::vector<cx>& zeros, const std::vector<double>& r_grid) {
    LindelofReport rep;
    std::vector<cx> sorted = zeros;
    std::sort(sorted.begin(), sorted.end(),
              [](cx a, cx b) { return std::abs(a) < std::abs(b); });
    std::vector<double> ratios;
    for (double r : r_grid) {
        cx s = 0.0;
        std::size_t n = 0;
        for (const cx& kn : sorted) {
            if (std::abs(kn) > r) break;
            s += 1.0 / kn;
            ++n;
        }
        rep.recip_sums.push_back(std::abs(s));
        rep.max_recip_sum = std::max(rep.max_recip_sum, std::abs(s));
        if (r > 0) {
            ratios.push_back((double)n / r);
            rep.max_count_ratio = std::max(rep.max_count_ratio, (double)n / r);
        }
    }
    for (const cx& kn : sorted) rep.imag_series += std::abs(kn.imag()) / std::norm(kn);
    rep.recip_sum_flagged = quartile_growth(rep.recip_sums, 1.5);
    rep.count_ratio_flagged = quartile_growth(ratios, 1.5);
    return rep;
}

Report perturbed_count_compare(const std::vector<cx>& zeros_o, const std::vector<cx>& zeros,
                               double s_bound) {
    Report rep;
    const std::size_t n = std::min(zeros_o.size(), zeros.size());
    double s = 0.0;
    bool pre_ok = true;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = std::abs(zeros[i] - zeros_o[i]);
        s = std::max(s, d);
        if (d > s_bound) pre_ok = false;
    }
    rep.add("pairwise_shift_within_bound", pre_ok, s,
            "s_bound=" + std::to_string(s_bound));

    std::vector<cx> zo(zeros_o.begin(), zeros_o.begin() + (std::ptrdiff_t)n);
    std::vector<cx> zn(zeros.begin(), zeros.begin() + (std::ptrdiff_t)n);
    double r_hi = 0.0;
    for (const cx& k : zo) r_hi = std::max(r_hi, std::abs(k));
    bool sandwich_ok = true;
    double worst = 0.0;
    const std::size_t n_r = 40;
    for (std::size_t i = 1; i <= n_r; ++i) {
        const double r = r_hi * (double)i / (double)n_r;
        const double lo = (double)counting_function(zo, std::max(0.0, r - 2 * s));
        const double mid = (double)counting_function(zn, r);
        const double hi = (double)counting_function(zo, r + 2 * s);
        if (!(lo <= mid && mid <= hi)) {
            sandwich_ok = false;
            worst = r;
        }
    }
    rep.add("count_sandwich", sandwich_ok, worst,
            sandwich_ok ? "" : "violation at r=" + std::to_string(worst));
    return rep;
}

} // namespace diracres
