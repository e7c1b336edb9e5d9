#include <cmath>

#include "doctest.h"
#include "helpers.hpp"

#include "ssp/rng.hpp"
#include "ssp/schedule.hpp"

using namespace ssp;

TEST_CASE("build_schedule produces the documented sampled subset") {
    const NoiseSchedule s = build_schedule(1000, 50, 8.5e-4, 1.2e-2);
    CHECK(s.t_sample() == 50);
    CHECK(s.sample_steps.front() == 0);
    CHECK(s.sample_steps.back() < 1000);
    for (int k = 1; k < 50; ++k) CHECK(s.sample_steps[k] > s.sample_steps[k - 1]);
}

TEST_CASE("alpha_bar matches the cumulative product oracle") {
    const NoiseSchedule s = build_schedule(1000, 50, 8.5e-4, 1.2e-2);
    const double r0 = std::sqrt(8.5e-4), r1 = std::sqrt(1.2e-2);
    double prod = 1.0;
    for (int i = 0; i < 1000; ++i) {
        const double root = r0 + (r1 - r0) * static_cast<double>(i) / 999.0;
        prod *= 1.0 - root * root;
        if (i == 0 || i == 499 || i == 999) {
            CHECK(s.alpha_bar[i] == doctest::Approx(prod).epsilon(1e-12));
        }
        CHECK(s.alpha_bar[i] > 0.0);
        if (i > 0) CHECK(s.alpha_bar[i] < s.alpha_bar[i - 1]);
    }
    CHECK(s.alpha_bar[0] > 0.99);
}

TEST_CASE("betas are recoverable from consecutive alpha_bar ratios") {
    const NoiseSchedule s = build_schedule(500, 10, 1e-3, 8e-3);
    const double r0 = std::sqrt(1e-3), r1 = std::sqrt(8e-3);
    for (int i = 1; i < 500; ++i) {
        const double beta = 1.0 - s.alpha_bar[i] / s.alpha_bar[i - 1];
        const double root = r0 + (r1 - r0) * static_cast<double>(i) / 499.0;
        CHECK(beta == doctest::Approx(root * root).epsilon(1e-10));
    }
}

TEST_CASE("build_schedule rejects degenerate ranges") {
    CHECK_THROWS_AS(build_schedule(1000, 50, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_schedule(1000, 2000, 1e-3, 1e-2), std::invalid_argument);
    CHECK_THROWS_AS(build_schedule(1000, 50, 1e-2, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(build_schedule(1000, 50, 2e-2, 3e-2), std::invalid_argument);  // abar[0] <= 0.99
}

TEST_CASE("ddim_pair boundary and ordering") {
    const NoiseSchedule s = build_schedule(1000, 50, 8.5e-4, 1.2e-2);
    CHECK(ddim_pair(s, 0).abar_prev == 1.0);
    for (int k = 0; k < 50; ++k) {
        const DdimPair p = ddim_pair(s, k);
        CHECK(p.abar_prev > p.abar_t);
        CHECK(p.abar_t == doctest::Approx(s.alpha_bar[s.sample_steps[k]]).epsilon(1e-12));
    }
    CHECK_THROWS_AS(ddim_pair(s, 50), std::invalid_argument);
    CHECK_THROWS_AS(ddim_pair(s, -1), std::invalid_argument);
}

TEST_CASE("rng streams are reproducible and independent") {
    SeededRng a1(7, "noise"), a2(7, "noise");
    SeededRng b(7, "variant"), c(7, "sweep");
    bool b_shares = true, c_shares = true;
    for (int i = 0; i < 64; ++i) {
        const std::uint32_t v = a1.next_u32();
        CHECK(a2.next_u32() == v);
        if (b.next_u32() != v) b_shares = false;
        if (c.next_u32() != v) c_shares = false;
    }
    CHECK_FALSE(b_shares);
    CHECK_FALSE(c_shares);

    SeededRng d1(7, "noise"), d2(8, "noise");
    bool differs = false;
    for (int i = 0; i < 16 && !differs; ++i) differs = d1.next_u32() != d2.next_u32();
    CHECK(differs);
}

TEST_CASE("rng draws land in the documented ranges with sane moments") {
    SeededRng rng(123, "noise");
    double mean = 0.0, var = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double z = rng.normal();
        mean += z;
        var += z * z;
    }
    mean /= n;
    var = var / n - mean * mean;
    CHECK(std::fabs(mean) < 0.02);
    CHECK(var == doctest::Approx(1.0).epsilon(0.05));

    SeededRng r2(9, "variant");
    for (int i = 0; i < 100; ++i) {
        const double u = r2.uniform(0.5, 1.0);
        CHECK(u >= 0.5);
        CHECK(u < 1.0);
    }
}
