#include <doctest.h>

#include "diracres/forward.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

#include <random>

using namespace diracres;
using testutil::const_potential;
using testutil::sampled_potential;

namespace {

Potential test_bump(double gamma, std::size_t n, double amp = 1.0) {
    return sampled_potential(gamma, n, [=](double x) {
        return amp * cx(0.5 + 0.3 * std::sin(PI * x / gamma), 0.2 * std::cos(2.0 * x / gamma) + 0.1);
    });
}

} // namespace

TEST_CASE("free potential gives the identity Jost matrix") {
    auto q0 = const_potential(1.0, 16, 0.0);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 10; ++t) {
        const cx z = testutil::random_box(rng, 5.0, 3.0);
        JostMatrix f = jost_solution(q0, z);
        CHECK(std::abs(f.entries[0][0] - 1.0) < 1e-12);
        CHECK(std::abs(f.entries[1][1] - 1.0) < 1e-12);
        CHECK(std::abs(f.entries[0][1]) < 1e-12);
        CHECK(std::abs(f.entries[1][0]) < 1e-12);
        CHECK(std::abs(jost_function(q0, z) - 1.0) < 1e-12);
    }
}

TEST_CASE("constant potential at z = 0 matches the matrix-exponential oracle") {
    auto q1 = const_potential(1.0, 64, 1.0);
    JostMatrix f = jost_solution(q1, 0.0);
    CHECK(std::abs(f.entries[0][0] - std::cosh(1.0)) < 1e-12);
    CHECK(std::abs(f.entries[0][1] + std::sinh(1.0)) < 1e-12);
    CHECK(std::abs(f.entries[1][0] + std::sinh(1.0)) < 1e-12);
    CHECK(std::abs(f.entries[1][1] - std::cosh(1.0)) < 1e-12);

    // oracle: exp(-M gamma), M = [[0,1],[1,0]], via Taylor scaling-squaring
    oracles::Mat2 M = {0.0, -1.0, -1.0, 0.0};
    oracles::Mat2 E = oracles::expm(M);
    CHECK(std::abs(f.entries[0][0] - E[0]) < 1e-12);
    CHECK(std::abs(f.entries[1][0] - E[2]) < 1e-12);
}

TEST_CASE("psi for constant real potential equals e^{c gamma} at z = 0") {
    for (double c : {0.3, 1.0, 2.0}) {
        auto q = const_potential(1.0, 128, c);
        CHECK(std::abs(jost_function(q, 0.0) - std::exp(c)) < 1e-10);
    }
    auto q = const_potential(1.0, 4096, 1.0);
    CHECK(std::abs(jost_function(q, 0.0) - std::exp(1.0)) < 1e-6);
}

TEST_CASE("jost solution matches an independent RK4 integration") {
    auto q1 = const_potential(1.0, 64, 1.0);
    {
        JostMatrix f = jost_solution(q1, cx(0.0, 2.0));
        oracles::Mat2 F = oracles::rk4_jost(q1, cx(0.0, 2.0));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                CHECK(std::abs(f.entries[i][j] - F[2 * i + j]) < 1e-8);
    }
    auto qb = test_bump(1.0, 48);
    std::mt19937_64 rng(17);
    for (int t = 0; t < 5; ++t) {
        const cx z = testutil::random_box(rng, 4.0, 2.0);
        JostMatrix f = jost_solution(qb, z);
        oracles::Mat2 F = oracles::rk4_jost(qb, z, 128);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                CHECK(std::abs(f.entries[i][j] - F[2 * i + j]) < 1e-8);
    }
}

TEST_CASE("determinant and sigma1-conjugation symmetry") {
    auto qb = test_bump(1.0, 64);
    std::mt19937_64 rng(7);
    for (int t = 0; t < 100; ++t) {
        const cx z = testutil::random_box(rng, 10.0, 10.0);
        JostMatrix f = jost_solution(qb, z);
        CHECK(std::abs(f.det() - 1.0) < 1e-8);
        JostMatrix fc = jost_solution(qb, std::conj(z));
        CHECK(std::abs(f.entries[0][0] - std::conj(fc.entries[1][1])) < 1e-8);
        CHECK(std::abs(f.entries[0][1] - std::conj(fc.entries[1][0])) < 1e-8);
    }
}

TEST_CASE("psi is entire: Cauchy-Riemann via centered differences") {
    auto qb = test_bump(1.0, 32);
    std::mt19937_64 rng(23);
    const double h = 1e-5;
    for (int t = 0; t < 10; ++t) {
        const cx z = testutil::random_box(rng, 5.0, 2.0);
        const cx dx = (jost_function(qb, z + h) - jost_function(qb, z - h)) / (2.0 * h);
        const cx dy = (jost_function(qb, z + cx(0, h)) - jost_function(qb, z - cx(0, h))) /
                      (2.0 * h * cx(0, 1));
        CHECK(std::abs(dx - dy) < 1e-6 * (1.0 + std::abs(dx)));
    }
}

TEST_CASE("psi tends to 1 along the positive imaginary axis") {
    auto qb = test_bump(1.0, 32);
    double prev = 1e9;
    for (double R : {10.0, 20.0, 40.0}) {
        const double dev = std::abs(jost_function(qb, cx(0.0, R)) - 1.0);
        CHECK(dev < prev);
        prev = dev;
    }
}

TEST_CASE("overflow reports the offending cell") {
    auto q1 = const_potential(1.0, 16, 1.0);
    CHECK_THROWS_AS((void)jost_solution(q1, cx(0.0, -400.0)), Error);
}

TEST_CASE("profile of the free potential is zero with zero leakage") {
    auto q0 = const_potential(1.0, 16, 0.0);
    JostFunction f = jost_profile(q0, 50.0, 1024);
    CHECK(f.leakage == doctest::Approx(0.0));
    for (const cx& v : f.g_samples) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("profile preconditions") {
    auto q = const_potential(1.0, 16, 1.0);
    CHECK_THROWS_AS((void)jost_profile(q, 200.0, 1000), Error);   // not a power of two
    CHECK_THROWS_AS((void)jost_profile(q, 200.0, 16), Error);     // window too short
}

TEST_CASE("small-potential profile is the conjugate of q (Born)") {
    const double amp = 0.05;
    auto qs = sampled_potential(1.0, 64, [=](double x) { return cx(amp * (0.6 + 0.4 * std::sin(PI * x)), amp * 0.3); });
    const double nq = qs.norm_l2();
    REQUIRE(nq <= 0.05 * 1.1);
    JostFunction f = jost_profile(qs, 400.0, 32768);
    // compare g to conj(q) at cell midpoints
    double err2 = 0.0;
    const double ds = f.step();
    for (std::size_t j = 0; j < qs.n_cells(); ++j) {
        const double x = ((double)j + 0.5) * qs.step();
        const std::size_t m = (std::size_t)(x / ds);
        const double t = x / ds - (double)m;
        const cx g = f.g_samples[m] * (1 - t) + f.g_samples[m + 1] * t;
        err2 += std::norm(g - std::conj(qs.samples[j])) * qs.step();
    }
    CHECK(std::sqrt(err2) <= 10.0 * nq * nq);
}

TEST_CASE("profile round trip against the forward solver") {
    auto q1 = const_potential(1.0, 64, 1.0);
    JostFunction f = jost_profile(q1, 800.0, 65536);
    CHECK(f.leakage < 1e-3);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        const double k = u(rng);
        worst = std::max(worst, std::abs(eval(f, cx(k, 0.0)) - jost_function(q1, cx(k, 0.0))));
    }
    CHECK(worst < 1e-5);
}

TEST_CASE("profile matches the characteristic-integration oracle") {
    auto qb = test_bump(1.0, 2048, 0.8);
    JostFunction f = jost_profile(qb, 800.0, 65536);
    std::vector<cx> g_oracle = oracles::goursat_profile(qb);
    // compare on the oracle's nodes (same gamma, different steps): interpolate f
    const double ds = f.step();
    double err2 = 0.0, ref2 = 0.0;
    for (std::size_t j = 0; j < g_oracle.size(); ++j) {
        const double s = qb.gamma * (double)j / (double)(g_oracle.size() - 1);
        const std::size_t m = std::min((std::size_t)(s / ds), f.n_nodes() - 2);
        const double t = s / ds - (double)m;
        const cx g = f.g_samples[m] * (1 - t) + f.g_samples[m + 1] * t;
        err2 += std::norm(g - g_oracle[j]);
        ref2 += std::norm(g_oracle[j]);
    }
    CHECK(std::sqrt(err2 / ref2) < 1e-4);
}

TEST_CASE("scattering matrix is unimodular and real-positive at 0 for q = 1") {
    auto q1 = const_potential(1.0, 64, 1.0);
    CHECK(std::abs(scattering_matrix(q1, 0.0) - 1.0) < 1e-12);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-30.0, 30.0);
    auto qb = test_bump(1.0, 64);
    for (int t = 0; t < 25; ++t)
        CHECK(std::abs(std::abs(scattering_matrix(qb, u(rng))) - 1.0) < 1e-10);
}

TEST_CASE("winding numbers") {
    // constant sequence
    CHECK(winding_number(std::vector<cx>(64, cx(1.0, 0.0))).w == 0);

    // synthetic Blaschke factor (z-i)/(z+i) on [-1000, 1000]: winds once
    // counterclockwise, so W = -1 under the e^{-2 i phi} convention
    std::vector<cx> blaschke;
    const std::size_t n = 20000;
    for (std::size_t j = 0; j < n; ++j) {
        const double x = -1000.0 + 2000.0 * (double)j / (double)(n - 1);
        blaschke.push_back((cx(x, -1.0)) / (cx(x, 1.0)));
    }
    Winding w = winding_number(blaschke);
    CHECK(w.w == -1);
    CHECK(w.residual < 1e-3);

    // forward-computed S has winding zero
    auto qb = test_bump(1.0, 48);
    SMatrixSamples s = scattering_grid(qb, 200.0, 8192);
    CHECK(winding_number(s.samples).w == 0);

    // undersampled grid trips the precondition
    std::vector<cx> coarse;
    for (int j = 0; j < 8; ++j) {
        const double th = 3.0 * (double)j;
        coarse.push_back(cx(std::cos(th), std::sin(th)));
    }
    CHECK_THROWS_AS((void)winding_number(coarse), Error);
}

TEST_CASE("verify_smatrix") {
    SMatrixSamples trivial;
    trivial.k_max = 100.0;
    trivial.gamma = 1.0;
    trivial.samples.assign(4096, cx(1.0, 0.0));
    Report rt = verify_smatrix(trivial);
    CHECK(rt.passed);
    CHECK(rt.find("norm_L2_right")->value == doctest::Approx(0.0));

    auto q1 = const_potential(1.0, 64, 1.0);
    SMatrixSamples s = scattering_grid(q1, 200.0, 16384);
    Report rep = verify_smatrix(s);
    CHECK(rep.passed);
    CHECK(rep.find("support_from_minus_gamma")->value < 1e-3);

    // time-shifted F violates inf supp F = -gamma
    SMatrixSamples bad = s;
    const double delta = 0.15;
    for (std::size_t j = 0; j < bad.samples.size(); ++j) {
        const double k = bad.k_at(j);
        bad.samples[j] = 1.0 + (s.samples[j] - 1.0) * std::exp(cx(0.0, -2.0 * k * delta));
    }
    Report rb = verify_smatrix(bad);
    CHECK_FALSE(rb.find("support_from_minus_gamma")->passed);
}
