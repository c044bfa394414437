#include <doctest.h>

#include "diracres/forward.hpp"
#include "diracres/jost.hpp"
#include "test_helpers.hpp"

#include <random>

using namespace diracres;
using testutil::const_potential;

TEST_CASE("eval basics") {
    JostFunction zero(1.0, std::vector<cx>(257, 0.0));
    std::mt19937_64 rng(11);
    for (int t = 0; t < 10; ++t)
        CHECK(std::abs(eval(zero, testutil::random_box(rng, 10.0, 5.0)) - 1.0) < 1e-14);

    JostFunction ones(1.0, std::vector<cx>(257, 1.0));
    CHECK(std::abs(eval(ones, 0.0) - 2.0) < 1e-12);

    auto q1 = const_potential(1.0, 64, 1.0);
    JostFunction f = jost_profile(q1, 400.0, 32768);
    CHECK(std::abs(eval(f, 0.0) - std::exp(1.0)) < 1e-6);
}

TEST_CASE("eval guards") {
    JostFunction f(1.0, std::vector<cx>(64, 0.5));
    CHECK_THROWS_AS((void)eval(f, cx(0.0, -400.0)), Error);
    CHECK_THROWS_AS((void)eval(f, cx(std::numeric_limits<double>::infinity(), 0.0)), Error);
}

TEST_CASE("eval derivative matches finite differences") {
    auto q1 = const_potential(1.0, 64, 1.0);
    JostFunction f = jost_profile(q1, 200.0, 16384);
    std::mt19937_64 rng(13);
    const double h = 1e-6;
    for (int t = 0; t < 10; ++t) {
        const cx z = testutil::random_box(rng, 8.0, 3.0);
        const cx fd = (eval(f, z + h) - eval(f, z - h)) / (2.0 * h);
        CHECK(std::abs(eval_derivative(f, z) - fd) < 1e-5 * (1.0 + std::abs(fd)));
    }
}

TEST_CASE("metric_J basics") {
    JostFunction a(1.0, std::vector<cx>(129, cx(0.3, -0.2)));
    CHECK(metric_J(a, a) == 0.0);
    JostFunction b(1.0, std::vector<cx>(129, cx(1.3, -0.2)));
    CHECK(metric_J(a, b) == doctest::Approx(1.0).epsilon(1e-9));
    JostFunction c(2.0, std::vector<cx>(129, 0.0));
    CHECK_THROWS_AS((void)metric_J(a, c), Error);

    auto qa = const_potential(1.0, 64, 1.0);
    auto qb = const_potential(1.0, 64, 1.01);
    JostFunction fa = jost_profile(qa, 200.0, 16384);
    JostFunction fb = jost_profile(qb, 200.0, 16384);
    const double d = metric_J(fa, fb);
    CHECK(d > 0.0);
    CHECK(d < 0.1);
}

TEST_CASE("verify_jost on forward data and edge cases") {
    auto q1 = const_potential(1.0, 64, 1.0);
    JostFunction f = jost_profile(q1, 200.0, 16384);
    Report rep = verify_jost(f);
    CHECK(rep.passed);
    CHECK(f.verified);

    // psi == 1: fails only the support check
    JostFunction unit(1.0, std::vector<cx>(129, 0.0));
    Report ru = verify_jost(unit);
    CHECK_FALSE(ru.passed);
    CHECK_FALSE(ru.find("support_reaches_gamma")->passed);
    CHECK(ru.find("real_line_floor")->passed);
    CHECK(ru.find("no_zeros_upper_half")->passed);

    // g = -2 on [0,1]: psi(z) = 1 - (e^{2iz}-1)/(iz) has a zero in the upper
    // half-plane (sign change of psi(it) between t -> 0 and t -> inf)
    JostFunction badf(1.0, std::vector<cx>(513, cx(-2.0, 0.0)));
    Report rb = verify_jost(badf);
    CHECK_FALSE(rb.passed);
    CHECK_FALSE(rb.find("no_zeros_upper_half")->passed);
}

TEST_CASE("Plancherel constant pi for the 2k kernel") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 5; ++trial) {
        auto g = testutil::smooth_edge_zero_profile(rng, 513, 1.0);
        JostFunction f(1.0, g);
        // ||F g||^2_{L2(R)} by quadrature over a wide band (profile is smooth,
        // spectrum decays like k^-3)
        const double K = 400.0;
        const std::size_t nk = 65536;
        const double dk = 2.0 * K / (double)nk;
        double lhs = 0.0;
        for (std::size_t j = 0; j < nk; ++j) {
            const double k = -K + dk * ((double)j + 0.5);
            lhs += std::norm(eval(f, cx(k, 0.0)) - 1.0);
        }
        lhs *= dk;
        double rhs = 0.0;
        {
            std::vector<cx> tmp = g;
            rhs = quad_abs2(tmp, f.step());
        }
        CHECK(lhs / rhs == doctest::Approx(PI).epsilon(1e-6));
    }
}

TEST_CASE("metric_J equals L2(R) distance over sqrt(pi) for smooth profiles") {
    std::mt19937_64 rng(29);
    auto g1 = testutil::smooth_edge_zero_profile(rng, 513, 1.0);
    auto g2 = testutil::smooth_edge_zero_profile(rng, 513, 1.0);
    JostFunction f1(1.0, g1), f2(1.0, g2);
    const double K = 400.0;
    const std::size_t nk = 65536;
    const double dk = 2.0 * K / (double)nk;
    double l2 = 0.0;
    for (std::size_t j = 0; j < nk; ++j) {
        const double k = -K + dk * ((double)j + 0.5);
        l2 += std::norm(eval(f1, cx(k, 0.0)) - eval(f2, cx(k, 0.0)));
    }
    l2 = std::sqrt(l2 * dk);
    CHECK(metric_J(f1, f2) == doctest::Approx(l2 / std::sqrt(PI)).epsilon(1e-6));
}
