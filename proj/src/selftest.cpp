#include "ssp/selftest.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "ssp/ddim.hpp"
#include "ssp/fft.hpp"
#include "ssp/filters.hpp"
#include "ssp/guidance.hpp"
#include "ssp/io.hpp"
#include "ssp/metrics.hpp"
#include "ssp/rng.hpp"
#include "ssp/schedule.hpp"
#include "ssp/startpoint.hpp"

namespace ssp {

namespace {

Grid random_grid(int h, int w, int c, std::uint64_t seed) {
    SeededRng rng(seed, "selftest");
    Grid g(h, w, c);
    for (double& v : g.data) v = rng.normal();
    return g;
}

struct Check {
    std::string name;
    std::function<void()> body;  // throws on failure
};

void expect(bool ok, const std::string& msg) {
    if (!ok) throw std::runtime_error(msg);
}

}  // namespace

std::vector<SelftestResult> run_selftest() {
    std::vector<Check> checks;

    checks.push_back({"fft round trip", [] {
        const Grid g = random_grid(12, 10, 3, 1);
        expect(linf_norm(sub(ifft2(fft2(g)), g)) < 1e-10, "round trip above 1e-10");
    }});
    checks.push_back({"parseval", [] {
        const Grid g = random_grid(9, 16, 2, 2);
        const Spectrum f = fft2(g);
        const Grid ones(9, 16, 1, 1.0);
        double spatial = 0.0;
        for (double v : g.data) spatial += v * v;
        expect(std::fabs(band_energy(f, ones) - spatial) < 1e-9 * spatial,
               "spectral energy differs from spatial energy");
    }});
    checks.push_back({"fft matches direct dft", [] {
        const Grid g = random_grid(6, 7, 1, 3);
        const Spectrum a = fft2(g), b = ref::dft2(g);
        double m = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
        expect(m < 1e-10, "fft2 deviates from the direct transform");
    }});
    checks.push_back({"filter partition of unity", [] {
        const Grid low = make_lowpass(FilterSpec{}, 16, 16);
        const Grid high = highpass_of(low);
        for (std::size_t i = 0; i < low.size(); ++i) {
            expect(low.data[i] + high.data[i] == 1.0, "low + high != 1");
        }
    }});
    checks.push_back({"band reduction identity at alpha 1", [] {
        const Grid g = random_grid(8, 8, 1, 4);
        const Spectrum f = fft2(g);
        const Grid mask = make_lowpass(FilterSpec{}, 8, 8);
        const Spectrum r = reduce_band(f, mask, 1.0, Band::low);
        for (std::size_t i = 0; i < f.size(); ++i) {
            expect(f.data[i] == r.data[i], "alpha=1 not an exact identity");
        }
    }});
    checks.push_back({"guidance endpoint identities", [] {
        const Grid a = random_grid(4, 4, 1, 5), b = random_grid(4, 4, 1, 6);
        expect(cfg_combine(a, b, 0.0).data == a.data, "omega=0 must return the unconditional branch");
        expect(cfg_combine(a, b, 1.0).data == b.data, "omega=1 must return the conditional branch");
        expect(negative_combine(a, a, 7.5).data == a.data, "equal branches must pass through");
    }});
    checks.push_back({"schedule monotonic", [] {
        const NoiseSchedule s = build_schedule(1000, 50, 8.5e-4, 1.2e-2);
        expect(s.alpha_bar[0] > 0.99, "alpha_bar[0] too small");
        for (int i = 1; i < s.t_train(); ++i) {
            expect(s.alpha_bar[i] < s.alpha_bar[i - 1], "alpha_bar not strictly decreasing");
        }
    }});
    checks.push_back({"ddim single-step inversion identity", [] {
        const Grid z = random_grid(4, 4, 2, 7), eps = random_grid(4, 4, 2, 8);
        const Grid fwd = ddim_step(z, eps, 0.5, 0.8);
        const Grid back = ddim_inverse_step(fwd, eps, 0.8, 0.5);
        expect(linf_norm(sub(back, z)) < 1e-12, "invert(step) deviates from identity");
    }});
    checks.push_back({"rng streams distinct and reproducible", [] {
        SeededRng n1(42, "noise"), n2(42, "noise"), v1(42, "variant");
        bool same_prefix = true;
        for (int i = 0; i < 64; ++i) {
            const std::uint32_t a = n1.next_u32(), b = n2.next_u32();
            expect(a == b, "identical stream diverged");
            if (v1.next_u32() != a) same_prefix = false;
        }
        expect(!same_prefix, "distinct streams share a 64-draw prefix");
    }});
    checks.push_back({"frequency manipulation identity at alpha 1", [] {
        const Grid z = random_grid(8, 8, 1, 9);
        const Grid out = frequency_manipulate(z, FilterSpec{}, 1.0, 1.0, 3);
        expect(out.data == z.data, "alpha=1 must return the input grid");
    }});
    checks.push_back({"raw grid round trip", [] {
        const Grid g = random_grid(5, 6, 2, 10);
        std::stringstream buf;
        write_grid_raw(buf, g);
        const Grid back = read_grid_raw(buf);
        expect(back.data == g.data && back.shape() == g.shape(), "raw format not lossless");
    }});
    checks.push_back({"frechet identity and composite", [] {
        const FeatureSet p = FeatureSet::from_moments({0.0, 0.0}, {1.0, 0.0, 0.0, 1.0});
        expect(std::fabs(frechet_gaussian(p, p)) < 1e-8, "self distance not ~0");
        expect(artfid_composite(0.0, 0.0) == 1.0, "composite at the origin must be 1");
    }});

    std::vector<SelftestResult> results;
    for (const auto& c : checks) {
        SelftestResult r;
        r.name = c.name;
        try {
            c.body();
            r.passed = true;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = e.what();
        }
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace ssp
