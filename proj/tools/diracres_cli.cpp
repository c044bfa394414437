// Command-line driver: forward, resonances, perturb, reconstruct, verify, hb,
// counting, stability. Exit codes: 0 ok, 1 I/O, 2 validation, 3 numerical.
#include <CLI11.hpp>

#include "diracres/entire.hpp"
#include "diracres/hermite.hpp"
#include "diracres/io.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace diracres;

namespace {

struct GlobalArgs {
    double k_max = 200.0;
    std::size_t n_k = 16384;
    double tol = 1e-10;
    unsigned long long seed = 0xD1AC;
    bool overwrite = false;
};

void check_output_path(const std::string& out, const std::vector<std::string>& inputs,
                       bool overwrite) {
    for (const auto& in : inputs)
        if (!in.empty() && out == in)
            throw validation_error("output path " + out + " collides with an input; use --overwrite");
    if (!overwrite && std::filesystem::exists(out))
        throw validation_error("output " + out + " exists; pass --overwrite");
}

std::string fingerprint_of(const std::string& cmd, const GlobalArgs& g, const std::string& extra) {
    std::ostringstream os;
    os.precision(17);
    os << cmd << "|kmax=" << g.k_max << "|nk=" << g.n_k << "|tol=" << g.tol << "|seed=" << g.seed
       << "|" << extra;
    return config_fingerprint(os.str());
}

std::string smatrix_path_for(const std::string& out) {
    std::filesystem::path p(out);
    std::filesystem::path q = p.parent_path() / p.stem();
    return q.string() + ".smatrix" + p.extension().string();
}

Rect parse_rect(const std::string& spec) {
    Rect r;
    if (std::sscanf(spec.c_str(), "%lf,%lf,%lf,%lf", &r.re0, &r.re1, &r.im0, &r.im1) != 4)
        throw validation_error("--rect expects re0,re1,im0,im1");
    return r;
}

std::vector<double> parse_scales(const std::string& spec) {
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    if (out.empty()) throw validation_error("--scales expects a comma-separated list");
    return out;
}

void print_report(const Report& rep) {
    for (const auto& it : rep.items)
        std::cout << "  [" << (it.passed ? "ok" : "FAIL") << "] " << it.name << " = " << it.value
                  << (it.detail.empty() ? "" : "  (" + it.detail + ")") << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"half-line Dirac scattering toolkit: Jost functions, resonances, "
                 "l1 resonance perturbations, reconstruction"};
    app.require_subcommand(1);

    GlobalArgs g;
    std::string potential_path, jost_path, shifts_path, out_path, rect_spec, scales_spec;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--kmax", g.k_max, "transform half-band");
        sub->add_option("--nk", g.n_k, "transform grid size (power of two)");
        sub->add_option("--tol", g.tol, "numerical tolerance");
        sub->add_option("--seed", g.seed, "seed for pseudorandom sampling");
        sub->add_flag("--overwrite", g.overwrite, "allow overwriting outputs");
    };

    auto* fwd = app.add_subcommand("forward", "potential -> Jost profile + scattering matrix");
    fwd->add_option("--potential", potential_path)->required();
    fwd->add_option("--out", out_path)->required();
    add_common(fwd);

    auto* res = app.add_subcommand("resonances", "locate zeros in the lower half-plane");
    res->add_option("--jost", jost_path)->required();
    res->add_option("--rect", rect_spec)->required();
    res->add_option("--out", out_path)->required();
    add_common(res);

    auto* per = app.add_subcommand("perturb", "apply an l1 shift set to the zeros");
    per->add_option("--jost", jost_path)->required();
    per->add_option("--shifts", shifts_path)->required();
    per->add_option("--out", out_path)->required();
    add_common(per);

    auto* rec = app.add_subcommand("reconstruct", "recover the potential from a Jost profile");
    rec->add_option("--jost", jost_path)->required();
    rec->add_option("--out", out_path)->required();
    add_common(rec);

    auto* ver = app.add_subcommand("verify", "class membership checks");
    ver->add_option("--jost", jost_path);
    ver->add_option("--potential", potential_path);
    add_common(ver);

    auto* hbc = app.add_subcommand("hb", "wrap a Jost profile as a Hermite-Biehler function");
    hbc->add_option("--jost", jost_path)->required();
    hbc->add_option("--out", out_path)->required();
    add_common(hbc);

    auto* cnt = app.add_subcommand("counting", "zero-counting CSV (r, n(r), normalized slope)");
    cnt->add_option("--jost", jost_path)->required();
    cnt->add_option("--rect", rect_spec)->required();
    cnt->add_option("--out", out_path)->required();
    add_common(cnt);

    auto* sta = app.add_subcommand("stability", "perturb/reconstruct stability curve CSV");
    sta->add_option("--potential", potential_path)->required();
    sta->add_option("--shifts", shifts_path)->required();
    sta->add_option("--scales", scales_spec)->required();
    sta->add_option("--out", out_path)->required();
    add_common(sta);

    CLI11_PARSE(app, argc, argv);

    try {
        if (fwd->parsed()) {
            Potential q = load_potential(potential_path);
            Report mem = validate_membership(q);
            if (!mem.passed) {
                std::cerr << "potential fails membership:\n";
                print_report(mem);
                return 2;
            }
            check_output_path(out_path, {potential_path}, g.overwrite);
            const std::string spath = smatrix_path_for(out_path);
            check_output_path(spath, {potential_path}, g.overwrite);
            const std::string fp = fingerprint_of("forward", g, potential_path);
            JostFunction f = jost_profile(q, g.k_max, g.n_k);
            save_jost(f, out_path, fp);
            SMatrixSamples s = scattering_grid(q, g.k_max, g.n_k);
            save_smatrix(s, spath, fp);
            Winding w = winding_number(s.samples);
            std::cout << "leakage = " << f.leakage << "\nW(S) = " << w.w
                      << " (residual " << w.residual << ")\n";
            return 0;
        }
        if (res->parsed()) {
            JostFunction f = load_jost(jost_path);
            Rect rect = parse_rect(rect_spec);
            check_output_path(out_path, {jost_path}, g.overwrite);
            FindOptions fo;
            fo.tol = g.tol;
            ResonanceList rl = find_resonances(f, rect, fo);
            save_resonances(rl, out_path, fingerprint_of("resonances", g, jost_path + rect_spec));
            std::cout << rl.items.size() << " resonances, total multiplicity "
                      << rl.total_multiplicity() << "\n";
            for (const auto& it : rl.items)
                std::cout << "  " << it.k.real() << (it.k.imag() < 0 ? " - " : " + ")
                          << std::abs(it.k.imag()) << "i  (mult " << it.multiplicity << ")\n";
            return 0;
        }
        if (per->parsed()) {
            JostFunction f = load_jost(jost_path);
            ShiftSet s = load_shifts(shifts_path);
            for (const auto& p : s.pairs)
                if (!((p.k_old + p.rho).imag() < 0.0)) {
                    std::cerr << "shift lands in the closed upper half-plane: k_old=("
                              << p.k_old.real() << "," << p.k_old.imag() << ") rho=("
                              << p.rho.real() << "," << p.rho.imag() << ")\n";
                    return 2;
                }
            check_output_path(out_path, {jost_path, shifts_path}, g.overwrite);
            JostFunction f2 = perturb_multiplier(f, s);
            save_jost(f2, out_path, fingerprint_of("perturb", g, jost_path + shifts_path));
            std::cout << "leakage = " << f2.leakage << "\n";
            return 0;
        }
        if (rec->parsed()) {
            JostFunction f = load_jost(jost_path);
            check_output_path(out_path, {jost_path}, g.overwrite);
            ReconstructionOptions ro;
            ro.tol_residual = g.tol;
            auto [q, rep] = reconstruct(f, ro);
            const std::string fp = fingerprint_of("reconstruct", g, jost_path);
            save_potential(q, out_path, fp);
            std::filesystem::path rp(out_path);
            const std::string report_path =
                (rp.parent_path() / rp.stem()).string() + ".report" + rp.extension().string();
            save_recon_report(rep, {}, report_path, fp);
            std::cout << (rep.converged ? "converged" : "NOT converged") << " in "
                      << rep.iterations << " iterations, residual " << rep.final_residual << "\n";
            return rep.converged ? 0 : 3;
        }
        if (ver->parsed()) {
            bool ok = true;
            if (!potential_path.empty()) {
                Potential q = load_potential(potential_path);
                Report rep = validate_membership(q);
                std::cout << "potential membership: " << (rep.passed ? "pass" : "fail") << "\n";
                print_report(rep);
                ok = ok && rep.passed;
            }
            if (!jost_path.empty()) {
                JostFunction f = load_jost(jost_path);
                Report rep = verify_jost(f);
                std::cout << "jost membership: " << (rep.passed ? "pass" : "fail") << "\n";
                print_report(rep);
                ok = ok && rep.passed;
            }
            if (potential_path.empty() && jost_path.empty())
                throw validation_error("verify: pass --jost and/or --potential");
            return ok ? 0 : 2;
        }
        if (hbc->parsed()) {
            JostFunction f = load_jost(jost_path);
            Report rep = verify_jost(f);
            if (!rep.passed) {
                std::cerr << "input fails verify_jost\n";
                print_report(rep);
                return 2;
            }
            HermiteBiehler e = from_jost(f);
            HbInequalityOptions ho;
            ho.seed = g.seed;
            Report ineq = hb_inequality_check(e, ho);
            check_output_path(out_path, {jost_path}, g.overwrite);
            save_jost(e.jost, out_path, fingerprint_of("hb", g, jost_path), /*hb_kind=*/true);
            print_report(ineq);
            return ineq.passed ? 0 : 3;
        }
        if (cnt->parsed()) {
            JostFunction f = load_jost(jost_path);
            Rect rect = parse_rect(rect_spec);
            check_output_path(out_path, {jost_path}, g.overwrite);
            FindOptions fo;
            fo.tol = g.tol;
            ResonanceList rl = find_resonances(f, rect, fo);
            std::vector<cx> zeros = rl.zeros_with_multiplicity();
            const double r_hi = std::max(std::abs(cx(rect.re0, rect.im0)), std::abs(cx(rect.re1, rect.im0)));
            std::ofstream csv(out_path);
            if (!csv) throw io_error("cannot write " + out_path);
            csv << "r,n,normalized_slope\n";
            csv.precision(17);
            for (int i = 1; i <= 40; ++i) {
                const double r = r_hi * (double)i / 40.0;
                const std::size_t n = counting_function(zeros, r);
                csv << r << "," << n << "," << ((double)n * PI / (2.0 * f.gamma * r)) << "\n";
            }
            std::cout << "wrote " << out_path << "\n";
            return 0;
        }
        if (sta->parsed()) {
            Potential q = load_potential(potential_path);
            ShiftSet s = load_shifts(shifts_path);
            std::vector<double> scales = parse_scales(scales_spec);
            check_output_path(out_path, {potential_path, shifts_path}, g.overwrite);
            StabilityExperimentOptions so;
            so.profile_k_max = g.k_max;
            so.profile_n_k = g.n_k;
            StabilityExperimentReport rep = stability_experiment(q, s, scales, so);
            std::ofstream csv(out_path);
            if (!csv) throw io_error("cannot write " + out_path);
            csv << "l1,distance\n";
            csv.precision(17);
            for (const auto& pt : rep.curve) {
                if (!pt.ok) {
                    std::cerr << "scale " << pt.scale << " failed: " << pt.note << "\n";
                    continue;
                }
                csv << pt.l1 << "," << pt.distance << "\n";
            }
            std::cout << "init agreement = " << rep.init_agreement << "\nwrote " << out_path << "\n";
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return (int)e.kind();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
