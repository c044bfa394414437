#ifndef DIRACRES_HERMITE_HPP
#define DIRACRES_HERMITE_HPP

#include "diracres/common.hpp"
#include "diracres/jost.hpp"
#include "diracres/perturb.hpp"

namespace diracres {

// Dirac-type Hermite-Biehler function E(k) = -i e^{-i gamma k} psi(k), stored
// through its Jost representative; zeros of E coincide with zeros of psi.
struct HermiteBiehler {
    JostFunction jost;
    double gamma() const { return jost.gamma; }
};

// pre: f passed verify_jost (domain error otherwise)
HermiteBiehler from_jost(const JostFunction& f);

cx hb_eval(const HermiteBiehler& e, cx k);

// || F^{-1}(E1 - E2) ||_{L2(-gamma/2, gamma/2)}; by the e^{-i gamma k} modulation
// this equals metric_J of the underlying Jost functions, which is how it is computed.
double hb_distance(const HermiteBiehler& e1, const HermiteBiehler& e2);

HermiteBiehler perturb_hb(const HermiteBiehler& e_o, const ShiftSet& s,
                          const PerturbOptions& opts = {});

struct HbInequalityOptions {
    std::size_t n_bulk = 200;    // pseudorandom points in {|z| <= 40/gamma, Im z in (0, 10]}
    std::size_t n_near_real = 20;  // near-real points at Im z = 1e-3
    unsigned long long seed = 0xD1AC;
};

// Samples |E(z)| > |E(conj z)| over the upper half-plane; returns the worst margin
// min (|E(z)| - |E(conj z)|) and pass/fail.
Report hb_inequality_check(const HermiteBiehler& e, const HbInequalityOptions& opts = {});

} // namespace diracres

#endif
