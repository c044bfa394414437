#ifndef DIRACRES_IO_HPP
#define DIRACRES_IO_HPP

#include "diracres/common.hpp"
#include "diracres/forward.hpp"
#include "diracres/inverse.hpp"
#include "diracres/jost.hpp"
#include "diracres/perturb.hpp"
#include "diracres/potential.hpp"
#include "diracres/resonance.hpp"

#include <string>

namespace diracres {

// FNV-1a over the canonical config string; embedded in every output file as
// "config_fingerprint" so identical inputs and config are checkable byte-for-byte.
std::string config_fingerprint(const std::string& canonical);

// Potential file: {"gamma", "step", "samples": [[re,im],...]}
void save_potential(const Potential& q, const std::string& path, const std::string& fingerprint = {});
Potential load_potential(const std::string& path);

// JostFunction file: {"gamma", "step", "g_samples": [[re,im],...], "leakage"}
void save_jost(const JostFunction& f, const std::string& path, const std::string& fingerprint = {},
               bool hb_kind = false);
JostFunction load_jost(const std::string& path);

// S-matrix file: {"k_max", "n_k", "gamma", "s_samples": [[re,im],...]}
void save_smatrix(const SMatrixSamples& s, const std::string& path, const std::string& fingerprint = {});
SMatrixSamples load_smatrix(const std::string& path);

// Resonance file: {"region": {...}, "items": [{"k": [re,im], "mult": m},...]}
void save_resonances(const ResonanceList& rl, const std::string& path, const std::string& fingerprint = {});
ResonanceList load_resonances(const std::string& path);

// Shift file: {"pairs": [{"k_old": [re,im], "rho": [re,im]},...], "declared_tail_l1": optional}
void save_shifts(const ShiftSet& s, const std::string& path, const std::string& fingerprint = {});
ShiftSet load_shifts(const std::string& path);

// Report file: {"curve": [[l1, dist],...], "residual_history": [...], "converged": bool}
void save_recon_report(const ReconReport& r, const std::vector<std::pair<double, double>>& curve,
                       const std::string& path, const std::string& fingerprint = {});

} // namespace diracres

#endif
