#include <cmath>

#include "doctest.h"
#include "helpers.hpp"

#include "ssp/fft.hpp"
#include "ssp/filters.hpp"

using namespace ssp;
using namespace ssp::testing;

TEST_CASE("grid construction and invariants") {
    Grid g(3, 4, 2, 0.5);
    CHECK(g.size() == 24);
    CHECK(g.at(1, 2, 3) == 0.5);
    CHECK_THROWS_AS(Grid(0, 4, 1), std::invalid_argument);
    g.at(0, 0, 0) = std::nan("");
    CHECK_FALSE(all_finite(g));
}

TEST_CASE("constant grid transforms to a single DC bin") {
    const Grid g(4, 4, 1, 1.0);
    const Spectrum f = fft2(g);
    // unitary normalization puts sqrt(HW) = 4 at the centered DC bin
    CHECK(std::abs(f.at(0, 2, 2)) == doctest::Approx(4.0).epsilon(1e-12));
    for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 4; ++x) {
            if (y == 2 && x == 2) continue;
            CHECK(std::abs(f.at(0, y, x)) < 1e-12);
        }
    }
}

TEST_CASE("impulse transforms to a flat magnitude spectrum") {
    Grid g(4, 4, 1, 0.0);
    g.at(0, 0, 0) = 1.0;
    const Spectrum f = fft2(g);
    for (const auto& v : f.data) {
        CHECK(std::abs(v) == doctest::Approx(0.25).epsilon(1e-12));
    }
}

TEST_CASE("parseval holds with unit factor") {
    const Grid g = random_grid(8, 8, 1, 11);
    const Spectrum f = fft2(g);
    double spatial = 0.0;
    for (double v : g.data) spatial += v * v;
    double spectral = 0.0;
    for (const auto& v : f.data) spectral += std::norm(v);
    CHECK(spectral == doctest::Approx(spatial).epsilon(1e-12));
}

TEST_CASE("fft2 matches the direct transform on small sizes") {
    for (auto [h, w] : {std::pair{2, 2}, {4, 6}, {5, 3}, {7, 7}, {16, 16}, {13, 11}, {12, 10}}) {
        const Grid g = random_grid(h, w, 2, static_cast<std::uint64_t>(h * 100 + w));
        CHECK(max_abs_diff(fft2(g), ref::dft2(g)) < 1e-10);
    }
}

TEST_CASE("round trip restores the grid") {
    const Grid g = random_grid(16, 16, 3, 21);
    CHECK(linf_norm(sub(ifft2(fft2(g)), g)) < 1e-10);
    const Grid odd = random_grid(9, 13, 2, 22);
    CHECK(linf_norm(sub(ifft2(fft2(odd)), odd)) < 1e-10);
}

TEST_CASE("zero spectrum inverts to the zero grid") {
    const Grid z = ifft2(Spectrum(6, 6, 1));
    CHECK(linf_norm(z) == 0.0);
}

TEST_CASE("stripes survive the round trip and match the direct inverse") {
    const Grid s = stripes(12, 12, 3, 1.0, true);
    const Spectrum f = fft2(s);
    CHECK(linf_norm(sub(ifft2(f), s)) < 1e-10);
    CHECK(linf_norm(sub(ref::idft2(f), s)) < 1e-9);
}

TEST_CASE("fft2 rejects bad input") {
    CHECK_THROWS_AS(fft2(Grid(1, 8, 1, 0.0)), std::invalid_argument);
    Grid g(4, 4, 1, 1.0);
    g.at(0, 1, 1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(fft2(g), std::invalid_argument);
}

TEST_CASE("ifft2 rejects a non-Hermitian spectrum") {
    Spectrum s(4, 4, 1);
    SeededRng rng(5, "test-data");
    for (auto& v : s.data) v = {rng.normal(), rng.normal()};
    CHECK_THROWS_AS(ifft2(s), std::runtime_error);
}

TEST_CASE("transform is linear") {
    const Grid a = random_grid(10, 14, 1, 31), b = random_grid(10, 14, 1, 32);
    const Spectrum fa = fft2(a), fb = fft2(b);
    const Spectrum fsum = fft2(lincomb(2.0, a, -0.5, b));
    double m = 0.0;
    for (std::size_t i = 0; i < fa.size(); ++i) {
        m = std::max(m, std::abs(fsum.data[i] - (2.0 * fa.data[i] - 0.5 * fb.data[i])));
    }
    CHECK(m < 1e-12);
}
