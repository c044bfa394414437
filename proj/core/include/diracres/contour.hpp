#ifndef DIRACRES_CONTOUR_HPP
#define DIRACRES_CONTOUR_HPP

#include "diracres/common.hpp"

#include <functional>

namespace diracres {

struct Rect {
    double re0 = 0, re1 = 0, im0 = 0, im1 = 0;
    bool contains(cx z) const {
        return z.real() >= re0 && z.real() <= re1 && z.imag() >= im0 && z.imag() <= im1;
    }
    double width() const { return re1 - re0; }
    double height() const { return im1 - im0; }
    Rect dilated(double factor) const {
        const double cw = 0.5 * (re0 + re1), ch = 0.5 * (im0 + im1);
        const double hw = 0.5 * width() * factor, hh = 0.5 * height() * factor;
        return {cw - hw, cw + hw, ch - hh, ch + hh};
    }
};

struct WindingResult {
    int count = 0;          // nearest integer to the argument-principle integral
    double residual = 0.0;  // |integral - count|
    double min_abs = 0.0;   // min |f| seen on the boundary
    cx argmin = 0.0;
    std::size_t evals = 0;
};

// Argument-principle zero count over the rectangle boundary by adaptive phase
// marching: segments are refined until consecutive phase increments are < pi/2.
// deriv may be empty; when present the residual is the deviation of the
// trapezoid quadrature of f'/f / (2 pi i) from the integer count.
WindingResult count_zeros_contour(const std::function<cx(cx)>& f,
                                  const std::function<cx(cx)>& deriv,
                                  const Rect& rect,
                                  double phase_cap = 1.2,
                                  std::size_t init_per_edge = 32,
                                  std::size_t max_evals = 4'000'000);

} // namespace diracres

#endif
