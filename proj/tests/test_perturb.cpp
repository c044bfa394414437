#include <doctest.h>

#include "diracres/forward.hpp"
#include "diracres/perturb.hpp"
#include "diracres/resonance.hpp"
#include "test_helpers.hpp"

using namespace diracres;
using testutil::const_potential;

namespace {

const JostFunction& base_profile() {
    static JostFunction f = jost_profile(const_potential(1.0, 64, 1.0), 800.0, 65536);
    return f;
}

const ResonanceList& base_zeros() {
    static ResonanceList rl = find_resonances(base_profile(), Rect{-22.0, 22.0, -3.0, -1e-6});
    return rl;
}

ShiftSet three_smallest_shifts(double mag = 0.05) {
    const ResonanceList& rl = base_zeros();
    ShiftSet s;
    s.pairs.push_back({rl.items[0].k, mag * std::exp(cx(0.0, -PI / 3.0))});
    s.pairs.push_back({rl.items[1].k, cx(0.0, -mag)});
    s.pairs.push_back({rl.items[2].k, mag * std::exp(cx(0.0, PI / 6.0))});
    return s;
}

} // namespace

TEST_CASE("validate_shifts") {
    const JostFunction& f = base_profile();
    ShiftSet empty;
    ShiftValidation v0 = validate_shifts(f, empty);
    CHECK(v0.report.passed);
    CHECK(v0.l1 == 0.0);

    ShiftSet s = three_smallest_shifts();
    ShiftValidation v = validate_shifts(f, s);
    CHECK(v.report.passed);
    CHECK(v.l1 == doctest::Approx(0.15).epsilon(1e-12));
    CHECK(v.C1 > 0.0);

    // a shift reaching the real axis is rejected
    ShiftSet bad;
    const cx k1 = base_zeros().items[0].k;
    bad.pairs.push_back({k1, cx(0.0, -k1.imag())});  // lands exactly on R
    ShiftValidation vb = validate_shifts(f, bad);
    CHECK_FALSE(vb.report.find("shifts_stay_in_lower_half_plane")->passed);
    CHECK_THROWS_AS((void)perturb_multiplier(f, bad), Error);

    // k_old far from any zero is a mismatch
    ShiftSet miss;
    miss.pairs.push_back({cx(0.77, -0.2), cx(0.0, -0.01)});
    ShiftValidation vm = validate_shifts(f, miss);
    CHECK_FALSE(vm.report.find("k_old_are_zeros")->passed);
}

TEST_CASE("empty shift set is the exact identity") {
    const JostFunction& f = base_profile();
    JostFunction out = perturb_multiplier(f, ShiftSet{});
    CHECK(metric_J(out, f) < 1e-10);
    JostFunction out2 = perturb_logexp(f, ShiftSet{});
    CHECK(metric_J(out2, f) < 1e-10);
}

TEST_CASE("single pair relocates exactly one zero") {
    const JostFunction& f_o = base_profile();
    const ResonanceList& rl = base_zeros();
    ShiftSet s;
    const cx k1 = rl.items[0].k;
    const cx rho = cx(0.03, -0.04);
    s.pairs.push_back({k1, rho});
    PerturbOptions po;
    po.run_verify = false;
    JostFunction f = perturb_multiplier(f_o, s, po);

    // the moved zero
    ResonanceList around = find_resonances(
        f, Rect{k1.real() - 0.3, k1.real() + 0.3, k1.imag() - 0.3, std::min(k1.imag() + 0.3, -1e-6)});
    REQUIRE(around.items.size() == 1);
    CHECK(std::abs(around.items[0].k - (k1 + rho)) < 1e-6);

    // other zeros unmoved within 1e-6
    for (std::size_t i = 1; i < 6; ++i) {
        const cx ko = rl.items[i].k;
        ResonanceList near = find_resonances(
            f, Rect{ko.real() - 0.2, ko.real() + 0.2, ko.imag() - 0.2, std::min(ko.imag() + 0.2, -1e-6)});
        REQUIRE(near.items.size() == 1);
        CHECK(std::abs(near.items[0].k - ko) < 1e-6);
    }
}

TEST_CASE("product formula at k = 0") {
    const JostFunction& f_o = base_profile();
    ShiftSet s = three_smallest_shifts();
    PerturbOptions po;
    po.run_verify = false;
    JostFunction f = perturb_multiplier(f_o, s, po);
    cx prod = 1.0;
    for (const auto& p : s.pairs) prod *= (p.k_old + p.rho) / p.k_old;
    CHECK(std::abs(eval(f, 0.0) - eval(f_o, 0.0) * prod) < 1e-8);
}

TEST_CASE("route equivalence and the certified log bound") {
    const JostFunction& f_o = base_profile();
    ShiftSet s = three_smallest_shifts();
    PerturbOptions po;
    po.run_verify = false;
    JostFunction fm = perturb_multiplier(f_o, s, po);
    LogExpInfo info;
    JostFunction fl = perturb_logexp(f_o, s, po, &info);
    CHECK(metric_J(fm, fl) < 1e-5);
    CHECK(info.bound_applicable);
    CHECK(info.bound_ok);

    // the bound scales linearly with the shifts
    const ShiftValidation v = validate_shifts(f_o, s);
    for (double t : {1.0, 0.5, 0.25}) {
        LogExpInfo it;
        (void)perturb_logexp(f_o, s.scaled(t), po, &it);
        CHECK(it.norm_F <= 2.78 * v.C1 * t * v.l1 * (1.0 + 1e-9));
    }
}

TEST_CASE("large shifts are split off in the log route") {
    const JostFunction& f_o = base_profile();
    const ResonanceList& rl = base_zeros();
    ShiftSet s;
    s.pairs.push_back({rl.items[0].k, cx(0.45, -0.1)});  // atom norm above 1/4
    s.pairs.push_back({rl.items[2].k, cx(0.0, -0.02)});
    PerturbOptions po;
    po.run_verify = false;
    LogExpInfo info;
    JostFunction fl = perturb_logexp(f_o, s, po, &info);
    CHECK(info.split_off == 1);
    CHECK_FALSE(info.bound_applicable);
    JostFunction fm = perturb_multiplier(f_o, s, po);
    CHECK(metric_J(fm, fl) < 1e-5);
}

TEST_CASE("perturbed output stays in the Jost class") {
    const JostFunction& f_o = base_profile();
    ShiftSet s = three_smallest_shifts();
    JostFunction f = perturb_multiplier(f_o, s);  // run_verify on by default
    CHECK(f.verified);
    CHECK(f.leakage < 1e-6);
}

TEST_CASE("stability curve decreases with ratio about 1/2") {
    const JostFunction& f_o = base_profile();
    ShiftSet s = three_smallest_shifts();
    auto curve = stability_curve(f_o, s, {1.0, 0.5, 0.25, 0.125, 0.0});
    REQUIRE(curve.size() == 5);
    for (const auto& pt : curve) CHECK(pt.ok);
    CHECK(curve[4].distance == 0.0);
    for (int i = 0; i + 2 < 4; ++i) CHECK(curve[i + 1].distance < curve[i].distance);
    for (int i = 1; i + 1 < 4; ++i) {
        const double ratio = curve[i + 1].distance / curve[i].distance;
        CHECK(ratio > 0.3);
        CHECK(ratio < 0.7);
    }
}

TEST_CASE("declared tail mass is reported through the bound") {
    const JostFunction& f_o = base_profile();
    ShiftSet s = three_smallest_shifts();
    s.declared_tail_l1 = 0.02;
    PerturbOptions po;
    po.run_verify = false;
    LogExpInfo info;
    (void)perturb_logexp(f_o, s, po, &info);
    const ShiftValidation v = validate_shifts(f_o, s);
    CHECK(info.tail_report == doctest::Approx(2.78 * v.C1 * 0.02));
}
