#ifndef DIRACRES_ENTIRE_HPP
#define DIRACRES_ENTIRE_HPP

#include "diracres/common.hpp"

namespace diracres {

// Hadamard data of an exponential-type function: C k^p e^{i kappa k} prod(1 - k/k_n),
// zeros stored with multiplicity (repeated entries), sorted by increasing modulus.
struct HadamardData {
    std::vector<cx> zeros;
    cx C = 1.0;
    double kappa = 0.0;
    std::size_t p = 0;

    HadamardData() = default;
    HadamardData(std::vector<cx> zeros_, cx C_, double kappa_, std::size_t p_);
};

struct HadamardValue {
    cx value = 0.0;
    // first-order log bound |k * sum 1/k_n| over the stored zeros beyond the
    // truncation radius; the contribution of unstored zeros beyond the list is
    // not knowable from the data and is excluded.
    double tail_estimate = 0.0;
    std::size_t factors_used = 0;
};

// Evaluate with factors accumulated in modulus order up to |k_n| <= r_trunc
// (infinity = full stored list).
HadamardValue hadamard_eval(const HadamardData& h, cx k,
                            double r_trunc = std::numeric_limits<double>::infinity());

// count with multiplicity of zeros with |k_n| <= r
std::size_t counting_function(const std::vector<cx>& zeros, double r);

struct LevinsonFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // rms deviation of n(r) from the fit
    std::size_t n_radii = 0;
};

// Least-squares slope of n(r) against r on a geometric grid of >= 20 radii in
// [r_min, r_max]; for a Dirac Jost function the target is 2 gamma / pi.
LevinsonFit levinson_slope(const std::vector<cx>& zeros, double r_min, double r_max,
                           std::size_t n_radii = 20);

struct LindelofReport {
    double max_recip_sum = 0.0;        // max over the grid of |sum_{|k_n|<=r} 1/k_n|
    double max_count_ratio = 0.0;      // max n(r)/r
    double imag_series = 0.0;          // partial sum of |Im k_n| / |k_n|^2
    bool recip_sum_flagged = false;    // last-quartile growth vs first quartile
    bool count_ratio_flagged = false;
    std::vector<double> recip_sums;    // per grid radius, for reporting
};

LindelofReport lindelof_check(const std::vector<cx>& zeros, const std::vector<double>& r_grid);

// Sandwich n_o(r - 2s) <= n(r) <= n_o(r + 2s) with s the max pairwise shift
// (pairing by index over the common prefix); any violation is reported.
Report perturbed_count_compare(const std::vector<cx>& zeros_o, const std::vector<cx>& zeros,
                               double s_bound);

} // namespace diracres

#endif
