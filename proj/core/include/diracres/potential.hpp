#ifndef DIRACRES_POTENTIAL_HPP
#define DIRACRES_POTENTIAL_HPP

#include "diracres/common.hpp"

namespace diracres {

// Complex-valued potential on [0, gamma], stored as cell values on a uniform
// grid (samples[j] is the constant value of q on [j*step, (j+1)*step)).
// step * n_cells == gamma holds exactly in the representation.
struct Potential {
    double gamma = 0.0;
    std::vector<cx> samples;

    Potential() = default;
    Potential(double gamma_, std::vector<cx> cells);

    std::size_t n_cells() const { return samples.size(); }
    double step() const { return gamma / static_cast<double>(samples.size()); }
    double x_mid(std::size_t j) const { return (static_cast<double>(j) + 0.5) * step(); }

    double norm_l2() const;

    // Exact piecewise-constant resampling onto n cells (overlap integration).
    Potential resampled(std::size_t n) const;
};

// Membership thresholds for the effective-support check: window delta = 4*step,
// tail L2 norm must exceed support_tol * ||q||.
struct MembershipOptions {
    double support_tol = 1e-6;
    double delta_cells = 4.0;
};

// L2(0, gamma) distance. Throws validation_error on mismatched gamma; grids must
// agree unless allow_resample, in which case the finer grid is used.
double metric_P(const Potential& q1, const Potential& q2, bool allow_resample = false);

Report validate_membership(const Potential& q, const MembershipOptions& opts = {});

} // namespace diracres

#endif
