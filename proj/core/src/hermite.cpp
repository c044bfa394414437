#include "diracres/hermite.hpp"

#include <cmath>
#include <random>

namespace diracres {

HermiteBiehler from_jost(const JostFunction& f) {
    if (!f.verified)
        throw validation_error("from_jost: input has not passed verify_jost");
    return HermiteBiehler{f};
}

cx hb_eval(const HermiteBiehler& e, cx k) {
    return cx(0.0, -1.0) * std::exp(cx(0.0, -1.0) * e.gamma() * k) * eval(e.jost, k);
}

double hb_distance(const HermiteBiehler& e1, const HermiteBiehler& e2) {
    if (std::abs(e1.gamma() - e2.gamma()) > 1e-12 * std::max(e1.gamma(), e2.gamma()))
        throw validation_error("hb_distance: incompatible gamma");
    return metric_J(e1.jost, e2.jost);
}

HermiteBiehler perturb_hb(const HermiteBiehler& e_o, const ShiftSet& s,
                          const PerturbOptions& opts) {
    JostFunction f = perturb_multiplier(e_o.jost, s, opts);
    if (!f.verified && opts.run_verify) verify_jost(f);
    if (opts.run_verify) return from_jost(f);
    return HermiteBiehler{f};
}

Report hb_inequality_check(const HermiteBiehler& e, const HbInequalityOptions& opts) {
    Report rep;
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> ux(-40.0 / e.gamma(), 40.0 / e.gamma());
    std::uniform_real_distribution<double> uy(0.0, 10.0);
    double worst = std::numeric_limits<double>::infinity();
    cx worst_z = 0.0;
    auto visit = [&](cx z) {
        const double up = std::abs(hb_eval(e, z));
        const double dn = std::abs(hb_eval(e, std::conj(z)));
        if (up - dn < worst) {
            worst = up - dn;
            worst_z = z;
        }
    };
    std::size_t accepted = 0;
    while (accepted < opts.n_bulk) {
        const cx z(ux(rng), uy(rng));
        if (z.imag() <= 0.0 || std::abs(z) > 40.0 / e.gamma()) continue;
        visit(z);
        ++accepted;
    }
    for (std::size_t i = 0; i < opts.n_near_real; ++i) {
        const double x = -40.0 / e.gamma() + 80.0 / e.gamma() * ((double)i + 0.5) / (double)opts.n_near_real;
        visit(cx(x, 1e-3));
    }
    rep.add("hb_inequality", worst > 0.0, worst,
            "worst margin at z=(" + std::to_string(worst_z.real()) + "," +
                std::to_string(worst_z.imag()) + ")");
    return rep;
}

} // namespace diracres
