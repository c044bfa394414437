#include "diracres/resonance.hpp"

#include <algorithm>
#include <cmath>

namespace diracres {

std::vector<cx> ResonanceList::zeros_with_multiplicity() const {
    std::vector<cx> out;
    for (const auto& it : items)
        for (int m = 0; m < it.multiplicity; ++m) out.push_back(it.k);
    return out;
}

namespace {

double scale_at(const JostFunction& f, cx k) {
    return std::exp(2.0 * f.gamma * std::abs(k.imag()));
}

// |psi| > floor_coef * e^{2 gamma |Im k|} on a coarse boundary sampling; the spec
// floor 1e-6 guards the top-level rectangle, subdivision cuts only need to avoid
// sitting on a zero.
bool boundary_clear(const JostFunction& f, const Rect& rect, double floor_coef = 1e-6,
                    std::size_t per_edge = 48) {
    const cx c[5] = {cx(rect.re0, rect.im0), cx(rect.re1, rect.im0), cx(rect.re1, rect.im1),
                     cx(rect.re0, rect.im1), cx(rect.re0, rect.im0)};
    for (int e = 0; e < 4; ++e)
        for (std::size_t i = 0; i <= per_edge; ++i) {
            const cx z = c[e] + (c[e + 1] - c[e]) * ((double)i / (double)per_edge);
            if (std::abs(eval(f, z)) <= floor_coef * scale_at(f, z)) return false;
        }
    return true;
}

CountResult count_impl(const JostFunction& f, const Rect& rect) {
    Rect r = rect;
    int dilations = 0;
    while (!boundary_clear(f, r)) {
        if (++dilations > 3)
            throw numerical_error("count_zeros_rect: zero persists on the boundary after 3 dilations");
        r = r.dilated(1.01);
    }
    auto fn = [&](cx z) { return eval(f, z); };
    auto dn = [&](cx z) { return eval_derivative(f, z); };
    WindingResult wr = count_zeros_contour(fn, dn, r);
    if (wr.residual >= 1e-2) {
        wr = count_zeros_contour(fn, dn, r, 0.6, 128);
        if (wr.residual >= 1e-2)
            throw numerical_error("count_zeros_rect: argument-principle residual " +
                                  std::to_string(wr.residual) + " above 1e-2");
    }
    CountResult out;
    out.count = wr.count;
    out.residual = wr.residual;
    out.rect_used = r;
    return out;
}

struct Cell {
    Rect r;
    int count;
};

// split fractions tried until no zero sits on the cut
constexpr double SPLITS[4] = {0.5, 0.52, 0.48, 0.55};

} // namespace

CountResult count_zeros_rect(const JostFunction& f, const Rect& rect) {
    return count_impl(f, rect);
}

ResonanceList find_resonances(const JostFunction& f, const Rect& rect, const FindOptions& opts) {
    if (!(rect.im1 < 0.0) || !(rect.im0 < rect.im1))
        throw validation_error("find_resonances: rectangle must lie in the open lower half-plane");

    ResonanceList out;
    out.region = rect;
    const CountResult top = count_impl(f, rect);
    if (top.count == 0) return out;

    auto newton_polish = [&](cx k0, const Rect& cell) -> cx {
        cx k = k0;
        for (int it = 0; it < 80; ++it) {
            const cx v = eval(f, k);
            if (std::abs(v) < opts.tol * std::max(1.0, scale_at(f, k)) && it > 0) return k;
            const cx d = eval_derivative(f, k);
            if (d == cx(0.0)) break;
            const cx step = v / d;
            k -= step;
            if (!finite(k)) break;
            // stay near the cell; generous margin so shallow basins survive
            Rect guard = cell.dilated(8.0);
            if (!guard.contains(k)) break;
            if (std::abs(step) < 1e-13 * std::max(1.0, std::abs(k))) {
                if (std::abs(eval(f, k)) < opts.tol * std::max(1.0, scale_at(f, k))) return k;
                break;
            }
        }
        return cx(std::numeric_limits<double>::quiet_NaN(), 0.0);
    };

    std::vector<Cell> frontier{{top.rect_used, top.count}};
    std::vector<Resonance> found;
    std::size_t cells_processed = 0;

    while (!frontier.empty()) {
        std::vector<Cell> next;
        for (const Cell& cell : frontier) {
            if (++cells_processed > opts.max_cells)
                throw numerical_error("find_resonances: cell budget exhausted");
            const double diag = std::hypot(cell.r.width(), cell.r.height());
            if (cell.count == 1 || diag < opts.min_cell) {
                const cx center(0.5 * (cell.r.re0 + cell.r.re1), 0.5 * (cell.r.im0 + cell.r.im1));
                cx k = newton_polish(center, cell.r);
                if (!finite(k) && cell.count == 1 && diag >= opts.min_cell) {
                    // bisection fallback: keep subdividing the unit-count cell
                } else {
                    if (!finite(k)) {
                        if (diag < opts.min_cell) {
                            // collision or flat spot: report the refined center
                            k = center;
                        } else {
                            throw numerical_error(
                                "find_resonances: unresolved cell [" + std::to_string(cell.r.re0) +
                                "," + std::to_string(cell.r.re1) + "]x[" + std::to_string(cell.r.im0) +
                                "," + std::to_string(cell.r.im1) + "]");
                        }
                    }
                    if (k.imag() >= 0.0)
                        throw numerical_error("find_resonances: polished root left the lower half-plane");
                    found.push_back({k, cell.count});
                    continue;
                }
            }
            // quadrisect, shifting the cut if a zero sits on it
            bool split_done = false;
            for (double fr : SPLITS) {
                const double xm = cell.r.re0 + fr * cell.r.width();
                const double ym = cell.r.im0 + fr * cell.r.height();
                Rect quads[4] = {{cell.r.re0, xm, cell.r.im0, ym},
                                 {xm, cell.r.re1, cell.r.im0, ym},
                                 {cell.r.re0, xm, ym, cell.r.im1},
                                 {xm, cell.r.re1, ym, cell.r.im1}};
                int counts[4];
                bool ok = true;
                int sum = 0;
                try {
                    for (int i = 0; i < 4; ++i) {
                        if (!boundary_clear(f, quads[i], 1e-13)) { ok = false; break; }
                        auto fn = [&](cx z) { return eval(f, z); };
                        auto dn = [&](cx z) { return eval_derivative(f, z); };
                        WindingResult wr = count_zeros_contour(fn, dn, quads[i]);
                        if (wr.residual >= 1e-2) { ok = false; break; }
                        counts[i] = wr.count;
                        sum += wr.count;
                    }
                } catch (const Error&) {
                    ok = false;
                }
                if (ok && sum == cell.count) {
                    for (int i = 0; i < 4; ++i)
                        if (counts[i] > 0) next.push_back({quads[i], counts[i]});
                    split_done = true;
                    break;
                }
            }
            if (!split_done)
                throw numerical_error("find_resonances: could not split cell without losing zeros");
        }
        frontier = std::move(next);
    }

    // merge coincident polished roots (collisions resolved to the same point)
    std::sort(found.begin(), found.end(), [](const Resonance& a, const Resonance& b) {
        if (std::abs(a.k) != std::abs(b.k)) return std::abs(a.k) < std::abs(b.k);
        if (a.k.real() != b.k.real()) return a.k.real() < b.k.real();
        return a.k.imag() < b.k.imag();
    });
    for (const Resonance& r : found) {
        if (!out.items.empty() && std::abs(out.items.back().k - r.k) < 10 * opts.min_cell)
            out.items.back().multiplicity += r.multiplicity;
        else
            out.items.push_back(r);
    }

    if (out.total_multiplicity() != (std::size_t)top.count)
        throw numerical_error("find_resonances: completeness check failed (" +
                              std::to_string(out.total_multiplicity()) + " found vs top count " +
                              std::to_string(top.count) + ")");
    out.region = top.rect_used;
    return out;
}

ForbiddenDomainFit forbidden_domain_check(const ResonanceList& rl, double gamma, double eps) {
    if (rl.items.empty()) throw validation_error("forbidden_domain_check: empty resonance list");
    if (!(eps > 0)) throw validation_error("forbidden_domain_check: eps must be positive");
    ForbiddenDomainFit fit;
    for (const auto& it : rl.items) {
        const double c = std::abs(it.k) * (std::exp(2.0 * gamma * it.k.imag()) - eps);
        fit.C = std::max(fit.C, c);
    }
    for (const auto& it : rl.items)
        fit.slack.push_back(std::log(eps + fit.C / std::abs(it.k)) - 2.0 * gamma * it.k.imag());
    return fit;
}

std::size_t strip_count(const ResonanceList& rl, double A) {
    if (!(A > 0)) throw validation_error("strip_count: A must be positive");
    if (rl.region.im0 > -A)
        throw validation_error("strip_count: searched region does not cover the strip down to -A");
    std::size_t n = 0;
    for (const auto& it : rl.items)
        if (it.k.imag() > -A) ++n;
    return n;
}

} // namespace diracres
