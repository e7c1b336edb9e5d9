#pragma once

// Shared test utilities: seeded data builders, independent oracles used to
// derive expected values (direct densities, finite differences, the exact
// Gaussian flow map), and the synthetic content/style pairs the pipeline
// experiments run on. Everything here is independent of the library paths it
// checks.

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ssp/grid.hpp"
#include "ssp/rng.hpp"
#include "ssp/schedule.hpp"
#include "ssp/score_models.hpp"

namespace ssp::testing {

inline Grid random_grid(int h, int w, int c, std::uint64_t seed) {
    SeededRng rng(seed, "test-data");
    Grid g(h, w, c);
    for (double& v : g.data) v = rng.normal();
    return g;
}

inline double max_abs_diff(const Spectrum& a, const Spectrum& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a.data[i] - b.data[i]));
    }
    return m;
}

inline double rel_l2_error(const Grid& a, const Grid& b) {
    return l2_distance(a, b) / l2_norm(b);
}

// ------------------------------------------------------------------ oracles

struct OracleComponent {
    Grid mean;
    double scale = 1.0;
    double weight = 1.0;
};

// log density of the mixture marginal at noise level abar, computed directly.
inline double oracle_log_density(const Grid& z, const std::vector<OracleComponent>& comps,
                                 double abar) {
    double wsum = 0.0;
    for (const auto& c : comps) wsum += c.weight;
    std::vector<double> logs;
    for (const auto& c : comps) {
        const double v = abar * c.scale * c.scale + (1.0 - abar);
        const double sa = std::sqrt(abar);
        double q = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            const double d = z.data[i] - sa * c.mean.data[i];
            q += d * d;
        }
        const double n = static_cast<double>(z.size());
        logs.push_back(std::log(c.weight / wsum) -
                       0.5 * n * std::log(2.0 * std::numbers::pi * v) - 0.5 * q / v);
    }
    double m = logs.front();
    for (double l : logs) m = std::max(m, l);
    double acc = 0.0;
    for (double l : logs) acc += std::exp(l - m);
    return m + std::log(acc);
}

// eps = -sqrt(1 - abar) * grad log density, by central finite differences.
inline Grid oracle_eps_fd(const Grid& z, const std::vector<OracleComponent>& comps, double abar,
                          double h = 1e-4) {
    Grid out = z;
    const double root = std::sqrt(1.0 - abar);
    for (std::size_t i = 0; i < z.size(); ++i) {
        Grid zp = z, zm = z;
        zp.data[i] += h;
        zm.data[i] -= h;
        const double grad =
            (oracle_log_density(zp, comps, abar) - oracle_log_density(zm, comps, abar)) / (2.0 * h);
        out.data[i] = -root * grad;
    }
    return out;
}

// Exact flow map of the single-Gaussian probability-flow dynamics between two
// noise levels: z' = sqrt(abar_to) mu + sqrt(v_to / v_from) (z - sqrt(abar_from) mu).
inline Grid oracle_gaussian_flow(const Grid& z, const Grid& mu, double scale, double abar_from,
                                 double abar_to) {
    const double v_from = abar_from * scale * scale + (1.0 - abar_from);
    const double v_to = abar_to * scale * scale + (1.0 - abar_to);
    const double sf = std::sqrt(abar_from), st = std::sqrt(abar_to);
    const double r = std::sqrt(v_to / v_from);
    Grid out = z;
    for (std::size_t i = 0; i < z.size(); ++i) {
        out.data[i] = st * mu.data[i] + r * (z.data[i] - sf * mu.data[i]);
    }
    return out;
}

inline double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("pearson: need two equal-length series");
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

// --------------------------------------------------- synthetic image corpus

inline Grid gaussian_bump(int h, int w, double cy, double cx, double spread, double amp) {
    Grid g(h, w, 1);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double dy = y - cy, dx = x - cx;
            g.at(0, y, x) = amp * std::exp(-(dy * dy + dx * dx) / spread);
        }
    }
    return g;
}

inline Grid stripes(int h, int w, int frequency, double amp, bool vertical) {
    Grid g(h, w, 1);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double t = vertical ? static_cast<double>(x) / w : static_cast<double>(y) / h;
            g.at(0, y, x) = amp * std::sin(2.0 * std::numbers::pi * frequency * t);
        }
    }
    return g;
}

inline Grid ramp(int h, int w, double amp) {
    Grid g(h, w, 1);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            g.at(0, y, x) = amp * (0.8 * x / w + 0.4 * y / h);
        }
    }
    return g;
}

// One content/style pair of the pipeline experiments. The content carries a
// shared smooth base, an index-dependent stripe layout, and (optionally) a
// pair-varying smooth tone; the style carries a ramp plus a square-wave
// texture with its own spread.
struct ToyPair {
    Grid content;
    Grid style;
    Grid content_base;  // the model's content-mode mean
};

inline ToyPair make_toy_pair(int h, int w, int index, double tone_amp, std::uint64_t seed) {
    SeededRng rng(seed + static_cast<std::uint64_t>(index), "toy-pair");
    const Grid base = gaussian_bump(h, w, h / 2.0, w / 2.0, 40.0, 1.0);
    const int freq = 2 + (index % 8);
    const double amp = 0.4 + 0.6 * rng.uniform();
    Grid content = add(base, stripes(h, w, freq, amp, index % 2 == 0));
    if (tone_amp > 0.0) {
        const double d = tone_amp * rng.uniform();
        const double cy = rng.uniform(4.0, h - 4.0);
        const double cx = rng.uniform(4.0, w - 4.0);
        content = add(content, gaussian_bump(h, w, cy, cx, rng.uniform(30.0, 50.0), d));
    }
    Grid style = ramp(h, w, 1.0);
    const double tex = 0.15 + 0.1 * rng.uniform();
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            style.at(0, y, x) += tex * ((y / 2) % 2 == 0 ? 1.0 : -1.0);
        }
    }
    return {std::move(content), std::move(style), base};
}

// Conditional model with one mode per image of a toy pair: label "content" is
// an isotropic Gaussian at the content base, label "style" one at the style
// image. Embeddings come from the extractors so negative embeddings built the
// same way resolve onto the style label.
inline std::shared_ptr<ConditionalMixtureModel> make_pair_model(
    const ToyPair& pair, double scale, std::shared_ptr<const NoiseSchedule> sched) {
    std::vector<ConditionalMixtureModel::LabeledMixture> entries(2);
    entries[0].label = "content";
    entries[0].embedding.style_slot = extract_style(pair.content_base);
    entries[0].embedding.content_slot = extract_content(pair.content_base);
    entries[0].components.push_back({pair.content_base, scale, 1.0});
    entries[1].label = "style";
    entries[1].embedding.style_slot = extract_style(pair.style);
    entries[1].embedding.content_slot = extract_content(pair.style);
    entries[1].components.push_back({pair.style, scale, 1.0});
    return std::make_shared<ConditionalMixtureModel>(std::move(entries), std::move(sched));
}

// Two well-separated constant modes for the guidance experiments.
inline std::shared_ptr<ConditionalMixtureModel> make_two_mode_model(
    int h, int w, double mean_level, double scale, std::shared_ptr<const NoiseSchedule> sched) {
    auto slot_embedding = [](double v) {
        ConditionEmbedding e;
        e.style_slot = {v};
        e.content_slot = {v};
        e.null_flag = false;
        return e;
    };
    std::vector<ConditionalMixtureModel::LabeledMixture> entries(2);
    entries[0].label = "a";
    entries[0].embedding = slot_embedding(+1.0);
    entries[0].components.push_back({Grid(h, w, 1, +mean_level), scale, 1.0});
    entries[1].label = "b";
    entries[1].embedding = slot_embedding(-1.0);
    entries[1].components.push_back({Grid(h, w, 1, -mean_level), scale, 1.0});
    return std::make_shared<ConditionalMixtureModel>(std::move(entries), std::move(sched));
}

}  // namespace ssp::testing
