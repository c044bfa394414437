#include <doctest.h>

#include "diracres/forward.hpp"
#include "diracres/perturb.hpp"
#include "diracres/resonance.hpp"
#include "test_helpers.hpp"

using namespace diracres;
using testutil::const_potential;

namespace {

const JostFunction& q1_profile() {
    static JostFunction f = jost_profile(const_potential(1.0, 64, 1.0), 800.0, 65536);
    return f;
}

const ResonanceList& q1_list() {
    static ResonanceList rl = find_resonances(q1_profile(), Rect{-22.0, 22.0, -3.0, -1e-6});
    return rl;
}

} // namespace

TEST_CASE("trivial counts and empty search") {
    JostFunction unit(1.0, std::vector<cx>(65, 0.0));
    CountResult c = count_zeros_rect(unit, Rect{-5.0, 5.0, -3.0, -0.01});
    CHECK(c.count == 0);
    CHECK(c.residual < 1e-2);
    ResonanceList rl = find_resonances(unit, Rect{-5.0, 5.0, -3.0, -0.01});
    CHECK(rl.items.empty());
}

TEST_CASE("rect must lie in the lower half-plane") {
    CHECK_THROWS_AS((void)find_resonances(q1_profile(), Rect{-5.0, 5.0, -3.0, 0.5}), Error);
}

TEST_CASE("q = 1 resonances: defining property and completeness") {
    const ResonanceList& rl = q1_list();
    REQUIRE(rl.items.size() >= 10);
    const JostFunction& f = q1_profile();
    for (const auto& it : rl.items) {
        CHECK(it.k.imag() < 0.0);
        const double scale = std::exp(2.0 * f.gamma * std::abs(it.k.imag()));
        CHECK(std::abs(eval(f, it.k)) < 1e-9 * std::max(1.0, scale));
    }
    // sorted by |k| with the documented tie-break
    for (std::size_t i = 0; i + 1 < rl.items.size(); ++i)
        CHECK(std::abs(rl.items[i].k) <= std::abs(rl.items[i + 1].k) + 1e-12);

    // completeness against an independent top-level count
    CountResult top = count_zeros_rect(f, rl.region);
    CHECK((std::size_t)top.count == rl.total_multiplicity());
}

TEST_CASE("manufactured single zero: count increment and location") {
    const JostFunction& f_o = q1_profile();
    const ResonanceList& rl = q1_list();
    const cx k1 = rl.items[0].k;  // smallest-modulus zero
    const cx target(1.0, -2.0);
    ShiftSet s;
    s.pairs.push_back({k1, target - k1});
    PerturbOptions po;
    po.run_verify = false;
    JostFunction f = perturb_multiplier(f_o, s, po);

    // a rectangle containing the target but not k1
    Rect around{target.real() - 0.4, target.real() + 0.4, target.imag() - 0.4, target.imag() - 1e-9 + 0.4};
    CountResult before = count_zeros_rect(f_o, around);
    CountResult after = count_zeros_rect(f, around);
    CHECK(after.count == before.count + 1);

    ResonanceList found = find_resonances(f, around);
    bool hit = false;
    for (const auto& it : found.items)
        if (std::abs(it.k - target) < 1e-8) hit = true;
    CHECK(hit);
}

TEST_CASE("collision: two shifts onto one point produce multiplicity 2") {
    const JostFunction& f_o = q1_profile();
    const ResonanceList& rl = q1_list();
    const cx target(0.4, -1.9);
    ShiftSet s;
    s.pairs.push_back({rl.items[0].k, target - rl.items[0].k});
    s.pairs.push_back({rl.items[1].k, target - rl.items[1].k});
    PerturbOptions po;
    po.run_verify = false;
    JostFunction f = perturb_multiplier(f_o, s, po);
    Rect around{target.real() - 0.3, target.real() + 0.3, target.imag() - 0.3, target.imag() + 0.3};
    ResonanceList found = find_resonances(f, around);
    std::size_t mult = 0;
    for (const auto& it : found.items)
        if (std::abs(it.k - target) < 1e-4) mult += (std::size_t)it.multiplicity;
    CHECK(mult == 2);
}

TEST_CASE("forbidden domain fit") {
    // single resonance at -i, gamma = 1, eps = 1/2: e^{-2} - 0.5 < 0 so C = 0
    ResonanceList single;
    single.items.push_back({cx(0.0, -1.0), 1});
    single.region = Rect{-2.0, 2.0, -2.0, -1e-9};
    ForbiddenDomainFit fit = forbidden_domain_check(single, 1.0, 0.5);
    CHECK(fit.C == 0.0);
    CHECK(fit.slack.size() == 1);
    CHECK(fit.slack[0] >= 0.0);

    // appending a deep resonance leaves C unchanged
    ResonanceList two = single;
    two.items.push_back({cx(5.0, -4.0), 1});
    CHECK(forbidden_domain_check(two, 1.0, 0.5).C == fit.C);

    // fitted C for forward data is finite and every slack is nonnegative
    ForbiddenDomainFit ff = forbidden_domain_check(q1_list(), 1.0, 0.5);
    CHECK(std::isfinite(ff.C));
    for (double s : ff.slack) CHECK(s >= -1e-12);

    CHECK_THROWS_AS((void)forbidden_domain_check(ResonanceList{}, 1.0, 0.5), Error);
}

TEST_CASE("strip counts") {
    const ResonanceList& rl = q1_list();
    double min_depth = 0.0;
    for (const auto& it : rl.items) min_depth = std::min(min_depth, it.k.imag());
    CHECK(strip_count(rl, 0.1) == 0);  // shallower than every resonance
    CHECK(strip_count(rl, -rl.region.im0) == rl.items.size());  // full region depth
    CHECK(strip_count(rl, 2.99) <= rl.total_multiplicity());
    CHECK_THROWS_AS((void)strip_count(rl, 50.0), Error);  // region does not cover

    // the strip count at A = 1 is the two shallowest zeros for q = 1
    CHECK(strip_count(rl, 1.0) == 2);
}

TEST_CASE("monotone tail: max Im over |k| >= r is nonincreasing in r") {
    const ResonanceList& rl = q1_list();
    const auto& items = rl.items;
    std::vector<double> suffix_max(items.size());
    double run = -std::numeric_limits<double>::infinity();
    for (std::size_t i = items.size(); i-- > 0;) {
        run = std::max(run, items[i].k.imag());
        suffix_max[i] = run;
    }
    for (std::size_t i = 0; i + 1 < suffix_max.size(); ++i)
        CHECK(suffix_max[i] >= suffix_max[i + 1] - 1e-12);
}
