#ifndef DIRACRES_RESONANCE_HPP
#define DIRACRES_RESONANCE_HPP

#include "diracres/common.hpp"
#include "diracres/contour.hpp"
#include "diracres/jost.hpp"

namespace diracres {

struct Resonance {
    cx k;
    int multiplicity = 1;
};

// Zeros of a Jost function in the open lower half-plane, sorted by |k| ascending;
// ties broken by ascending Re k, then ascending Im k.
struct ResonanceList {
    std::vector<Resonance> items;
    Rect region;

    std::size_t total_multiplicity() const {
        std::size_t s = 0;
        for (const auto& it : items) s += (std::size_t)it.multiplicity;
        return s;
    }
    std::vector<cx> zeros_with_multiplicity() const;
};

struct CountResult {
    int count = 0;
    double residual = 0.0;
    Rect rect_used;  // after any dilation
};

// Argument-principle count over the rectangle. The boundary is pre-checked
// against the floor 1e-6 * e^{2 gamma |Im k|}; on a violation the rectangle is
// dilated by 1% (up to 3 times). Residual from the nearest integer must be < 1e-2.
CountResult count_zeros_rect(const JostFunction& f, const Rect& rect);

struct FindOptions {
    double tol = 1e-10;          // scaled residual target |psi(k)| < tol * max(1, e^{2 gamma |Im k|})
    double min_cell = 1e-8;      // cells below this size report their count as a multiplicity
    std::size_t max_cells = 200000;
};

// Recursive quadrisection until each cell holds at most one zero, then Newton
// polishing from the cell center (psi' by differentiated quadrature).
ResonanceList find_resonances(const JostFunction& f, const Rect& rect, const FindOptions& opts = {});

struct ForbiddenDomainFit {
    double C = 0.0;                    // smallest C >= 0 with 2 gamma Im k <= ln(eps + C/|k|)
    std::vector<double> slack;         // ln(eps + C/|k_n|) - 2 gamma Im k_n per resonance
};

ForbiddenDomainFit forbidden_domain_check(const ResonanceList& rl, double gamma, double eps);

// Count of stored resonances with Im k > -A. The searched region must cover the
// strip down to depth -A (coverage error otherwise).
std::size_t strip_count(const ResonanceList& rl, double A);

} // namespace diracres

#endif
