#include <cmath>

#include "doctest.h"
#include "helpers.hpp"

#include "ssp/fft.hpp"
#include "ssp/filters.hpp"

using namespace ssp;
using namespace ssp::testing;

TEST_CASE("gaussian lowpass values follow the stated formula") {
    FilterSpec spec;  // gaussian, sigma 0.3
    // 20x20 puts bins exactly on r = k/10
    const Grid m = make_lowpass(spec, 20, 20);
    CHECK(m.at(0, 10, 10) == 1.0);
    CHECK(m.at(0, 10, 13) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));  // r = 0.3
    CHECK(m.at(0, 13, 10) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    for (double v : m.data) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("butterworth lowpass hits one at DC and a half at the cutoff") {
    FilterSpec spec;
    spec.kind = FilterKind::butterworth;
    spec.cutoff = 0.5;
    spec.order = 2;
    const Grid m = make_lowpass(spec, 20, 20);
    CHECK(m.at(0, 10, 10) == 1.0);
    CHECK(m.at(0, 10, 15) == doctest::Approx(0.5).epsilon(1e-12));  // r = 0.5 = cutoff
    CHECK_THROWS_AS(([&] {
                        FilterSpec bad = spec;
                        bad.cutoff = 1.5;
                        return make_lowpass(bad, 8, 8);
                    }()),
                    std::invalid_argument);
}

TEST_CASE("lowpass parameter validation") {
    FilterSpec spec;
    spec.sigma = 0.0;
    CHECK_THROWS_AS(make_lowpass(spec, 8, 8), std::invalid_argument);
    CHECK_THROWS_AS(make_lowpass(FilterSpec{}, 1, 8), std::invalid_argument);
}

TEST_CASE("highpass complements the lowpass exactly") {
    const Grid low = make_lowpass(FilterSpec{}, 17, 12);
    const Grid high = highpass_of(low);
    CHECK(high.at(0, 8, 6) == 0.0);  // DC
    for (std::size_t i = 0; i < low.size(); ++i) {
        CHECK(low.data[i] + high.data[i] == 1.0);
    }
    const Grid m20 = make_lowpass(FilterSpec{}, 20, 20);
    const Grid h20 = highpass_of(m20);
    CHECK(h20.at(0, 10, 13) == doctest::Approx(1.0 - std::exp(-0.5)).epsilon(1e-12));

    Grid bad(2, 2, 1, 1.5);
    CHECK_THROWS_AS(highpass_of(bad), std::invalid_argument);
}

TEST_CASE("reduce_band is exact at the identity endpoint and kills DC at zero") {
    const Grid g = random_grid(8, 8, 2, 41);
    const Spectrum f = fft2(g);
    const Grid mask = make_lowpass(FilterSpec{}, 8, 8);

    const Spectrum id = reduce_band(f, mask, 1.0, Band::low);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(id.data[i] == f.data[i]);
    const Spectrum id_high = reduce_band(f, mask, 1.0, Band::high);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(id_high.data[i] == f.data[i]);

    const Spectrum nodc = reduce_band(f, mask, 0.0, Band::low);
    CHECK(std::abs(nodc.at(0, 4, 4)) == 0.0);
    CHECK(std::abs(nodc.at(1, 4, 4)) == 0.0);

    CHECK_THROWS_AS(reduce_band(f, mask, 1.5, Band::low), std::invalid_argument);
    CHECK_THROWS_AS(reduce_band(f, make_lowpass(FilterSpec{}, 6, 6), 0.5, Band::low),
                    std::invalid_argument);
}

TEST_CASE("reduce_band matches its per-bin weight form bit-exactly") {
    const Grid g = random_grid(10, 6, 1, 42);
    const Spectrum f = fft2(g);
    const Grid mask = make_lowpass(FilterSpec{}, 10, 6);
    const double alpha = 0.7;
    const Spectrum low = reduce_band(f, mask, alpha, Band::low);
    const Spectrum high = reduce_band(f, mask, alpha, Band::high);
    double worst = 0.0;
    for (int y = 0; y < 10; ++y) {
        for (int x = 0; x < 6; ++x) {
            const double m = mask.at(0, y, x);
            CHECK(low.at(0, y, x) == f.at(0, y, x) * (alpha * m + (1.0 - m)));
            CHECK(high.at(0, y, x) == f.at(0, y, x) * (m + alpha * (1.0 - m)));
            // the algebraically equivalent two-term grouping agrees to round-off
            const auto two_term = alpha * (f.at(0, y, x) * m) + f.at(0, y, x) * (1.0 - m);
            worst = std::max(worst, std::abs(low.at(0, y, x) - two_term));
        }
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("band_energy basics and the masked-energy oracle") {
    const Grid mask = make_lowpass(FilterSpec{}, 12, 12);
    CHECK(band_energy(Spectrum(12, 12, 3), mask) == 0.0);

    const Grid g = random_grid(12, 12, 2, 43);
    const Spectrum f = fft2(g);
    const Grid ones(12, 12, 1, 1.0);
    double spatial = 0.0;
    for (double v : g.data) spatial += v * v;
    CHECK(band_energy(f, ones) == doctest::Approx(spatial).epsilon(1e-9));

    // stripes: low-band fraction agrees with the direct-transform oracle
    const Grid s = stripes(12, 12, 2, 1.3, false);
    const Spectrum fs = fft2(s), fo = ref::dft2(s);
    double lib = band_energy(fs, mask);
    double oracle = 0.0;
    for (int y = 0; y < 12; ++y) {
        for (int x = 0; x < 12; ++x) {
            oracle += std::norm(fo.at(0, y, x)) * mask.at(0, y, x) * mask.at(0, y, x);
        }
    }
    CHECK(lib == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("band reduction scales the low term by alpha squared and keeps the high term") {
    const Grid g = random_grid(16, 16, 1, 44);
    const Spectrum f = fft2(g);
    const Grid low_mask = make_lowpass(FilterSpec{}, 16, 16);
    const Grid high_mask = highpass_of(low_mask);
    const double alpha = 0.7;
    const Spectrum out = reduce_band(f, low_mask, alpha, Band::low);

    // low term of the output = out - f (x) H; its energy is alpha^2 times the
    // masked low-band energy of the input
    const Spectrum f_high = reduce_band(f, low_mask, 0.0, Band::low);   // f (x) (1-M)
    const Spectrum f_low = reduce_band(f, low_mask, 0.0, Band::high);   // f (x) M
    Spectrum low_term = out;
    for (std::size_t i = 0; i < out.size(); ++i) low_term.data[i] -= f_high.data[i];
    const Grid ones(16, 16, 1, 1.0);
    CHECK(band_energy(low_term, ones) ==
          doctest::Approx(alpha * alpha * band_energy(f, low_mask)).epsilon(1e-9));

    // high term of the output is untouched
    Spectrum high_term = out;
    for (std::size_t i = 0; i < out.size(); ++i) high_term.data[i] -= alpha * f_low.data[i];
    CHECK(band_energy(high_term, ones) ==
          doctest::Approx(band_energy(f, high_mask)).epsilon(1e-9));
}
