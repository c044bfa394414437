#include "diracres/io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>

namespace diracres {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json cx_pair(cx v) { return ordered_json::array({v.real(), v.imag()}); }

cx pair_cx(const ordered_json& j) {
    if (!j.is_array() || j.size() != 2) throw io_error("expected [re, im] pair");
    return cx(j[0].get<double>(), j[1].get<double>());
}

ordered_json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw io_error("cannot parse " + path + ": " + e.what());
    }
    return j;
}

void write_file(const ordered_json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write " + path);
    out << j.dump(1) << "\n";
    if (!out) throw io_error("short write to " + path);
}

void stamp(ordered_json& j, const std::string& fp) {
    if (!fp.empty()) j["config_fingerprint"] = fp;
}

} // namespace

std::string config_fingerprint(const std::string& canonical) {
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", h);
    return std::string(buf);
}

void save_potential(const Potential& q, const std::string& path, const std::string& fp) {
    ordered_json j;
    j["gamma"] = q.gamma;
    j["step"] = q.step();
    ordered_json arr = ordered_json::array();
    for (const cx& v : q.samples) arr.push_back(cx_pair(v));
    j["samples"] = std::move(arr);
    stamp(j, fp);
    write_file(j, path);
}

Potential load_potential(const std::string& path) {
    ordered_json j = load_file(path);
    try {
        const double gamma = j.at("gamma").get<double>();
        const double step = j.at("step").get<double>();
        std::vector<cx> cells;
        for (const auto& e : j.at("samples")) cells.push_back(pair_cx(e));
        if (cells.empty()) throw validation_error(path + ": empty samples");
        if (std::abs(step * (double)cells.size() - gamma) > 1e-9 * gamma)
            throw validation_error(path + ": step * n_cells does not equal gamma");
        return Potential(gamma, std::move(cells));
    } catch (const ordered_json::exception& e) {
        throw io_error(path + ": " + e.what());
    }
}

void save_jost(const JostFunction& f, const std::string& path, const std::string& fp, bool hb_kind) {
    ordered_json j;
    if (hb_kind) j["kind"] = "hermite-biehler";
    j["gamma"] = f.gamma;
    j["step"] = f.step();
    ordered_json arr = ordered_json::array();
    for (const cx& v : f.g_samples) arr.push_back(cx_pair(v));
    j["g_samples"] = std::move(arr);
    j["leakage"] = f.leakage;
    stamp(j, fp);
    write_file(j, path);
}

JostFunction load_jost(const std::string& path) {
    ordered_json j = load_file(path);
    try {
        const double gamma = j.at("gamma").get<double>();
        const double step = j.at("step").get<double>();
        std::vector<cx> nodes;
        for (const auto& e : j.at("g_samples")) nodes.push_back(pair_cx(e));
        if (nodes.size() < 2) throw validation_error(path + ": too few profile nodes");
        if (std::abs(step * (double)(nodes.size() - 1) - gamma) > 1e-9 * gamma)
            throw validation_error(path + ": step * (n_nodes - 1) does not equal gamma");
        const double leak = j.contains("leakage") ? j["leakage"].get<double>() : 0.0;
        return JostFunction(gamma, std::move(nodes), leak);
    } catch (const ordered_json::exception& e) {
        throw io_error(path + ": " + e.what());
    }
}

void save_smatrix(const SMatrixSamples& s, const std::string& path, const std::string& fp) {
    ordered_json j;
    j["k_max"] = s.k_max;
    j["n_k"] = s.samples.size();
    j["gamma"] = s.gamma;
    ordered_json arr = ordered_json::array();
    for (const cx& v : s.samples) arr.push_back(cx_pair(v));
    j["s_samples"] = std::move(arr);
    stamp(j, fp);
    write_file(j, path);
}

SMatrixSamples load_smatrix(const std::string& path) {
    ordered_json j = load_file(path);
    try {
        SMatrixSamples s;
        s.k_max = j.at("k_max").get<double>();
        s.gamma = j.at("gamma").get<double>();
        for (const auto& e : j.at("s_samples")) s.samples.push_back(pair_cx(e));
        if (s.samples.size() != j.at("n_k").get<std::size_t>())
            throw validation_error(path + ": n_k does not match s_samples length");
        return s;
    } catch (const ordered_json::exception& e) {
        throw io_error(path + ": " + e.what());
    }
}

void save_resonances(const ResonanceList& rl, const std::string& path, const std::string& fp) {
    ordered_json j;
    j["region"] = {{"re0", rl.region.re0}, {"re1", rl.region.re1},
                   {"im0", rl.region.im0}, {"im1", rl.region.im1}};
    ordered_json arr = ordered_json::array();
    for (const auto& it : rl.items) {
        ordered_json e;
        e["k"] = cx_pair(it.k);
        e["mult"] = it.multiplicity;
        arr.push_back(std::move(e));
    }
    j["items"] = std::move(arr);
    stamp(j, fp);
    write_file(j, path);
}

ResonanceList load_resonances(const std::string& path) {
    ordered_json j = load_file(path);
    try {
        ResonanceList rl;
        const auto& r = j.at("region");
        rl.region = Rect{r.at("re0").get<double>(), r.at("re1").get<double>(),
                         r.at("im0").get<double>(), r.at("im1").get<double>()};
        for (const auto& e : j.at("items"))
            rl.items.push_back({pair_cx(e.at("k")), e.at("mult").get<int>()});
        return rl;
    } catch (const ordered_json::exception& e) {
        throw io_error(path + ": " + e.what());
    }
}

void save_shifts(const ShiftSet& s, const std::string& path, const std::string& fp) {
    ordered_json j;
    ordered_json arr = ordered_json::array();
    for (const auto& p : s.pairs) {
        ordered_json e;
        e["k_old"] = cx_pair(p.k_old);
        e["rho"] = cx_pair(p.rho);
        arr.push_back(std::move(e));
    }
    j["pairs"] = std::move(arr);
    if (s.declared_tail_l1 > 0) j["declared_tail_l1"] = s.declared_tail_l1;
    stamp(j, fp);
    write_file(j, path);
}

ShiftSet load_shifts(const std::string& path) {
    ordered_json j = load_file(path);
    try {
        ShiftSet s;
        for (const auto& e : j.at("pairs"))
            s.pairs.push_back({pair_cx(e.at("k_old")), pair_cx(e.at("rho"))});
        if (j.contains("declared_tail_l1")) s.declared_tail_l1 = j["declared_tail_l1"].get<double>();
        return s;
    } catch (const ordered_json::exception& e) {
        throw io_error(path + ": " + e.what());
    }
}

void save_recon_report(const ReconReport& r, const std::vector<std::pair<double, double>>& curve,
                       const std::string& path, const std::string& fp) {
    ordered_json j;
    ordered_json c = ordered_json::array();
    for (const auto& [l1, dist] : curve) c.push_back(ordered_json::array({l1, dist}));
    j["curve"] = std::move(c);
    j["residual_history"] = r.residual_history;
    j["converged"] = r.converged;
    stamp(j, fp);
    write_file(j, path);
}

} // namespace diracres
