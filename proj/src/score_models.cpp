#include "ssp/score_models.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

#include "ssp/fft.hpp"
#include "ssp/parallel.hpp"

namespace ssp {

using nlohmann::json;

ScoreModel::ScoreModel(std::shared_ptr<const NoiseSchedule> sched)
    : schedule_(std::move(sched)) {
    if (!schedule_) throw std::invalid_argument("score model: schedule must not be null");
}

double ScoreModel::abar_at(int step_index) const {
    if (step_index < 0 || step_index >= schedule_->t_sample()) {
        throw std::invalid_argument("score model: step index out of range");
    }
    return schedule_->alpha_bar[schedule_->sample_steps[step_index]];
}

void ScoreModel::check_latent(const Grid& z) const {
    if (z.shape() != data_shape()) {
        throw std::invalid_argument("score model: latent shape mismatch");
    }
}

namespace {

void check_component(const GaussianComponent& c) {
    if (!(c.scale > 0.0)) throw std::invalid_argument("gaussian component: scale must be positive");
    if (!(c.weight > 0.0)) throw std::invalid_argument("gaussian component: weight must be positive");
    if (!all_finite(c.mean)) throw std::invalid_argument("gaussian component: non-finite mean");
}

// eps for one component: sqrt(1-abar) (z - sqrt(abar) mu) / (abar s^2 + 1 - abar).
inline double marginal_var(double abar, double scale) {
    return abar * scale * scale + (1.0 - abar);
}

double log_marginal(const Grid& z, const GaussianComponent& c, double abar) {
    const double v = marginal_var(abar, c.scale);
    const double sa = std::sqrt(abar);
    const double q = par::blocked_sum(z.size(), [&](std::size_t i) {
        const double d = z.data[i] - sa * c.mean.data[i];
        return d * d;
    });
    const double n = static_cast<double>(z.size());
    return std::log(c.weight) - 0.5 * n * std::log(2.0 * std::numbers::pi * v) - 0.5 * q / v;
}

}  // namespace

IsotropicGaussianModel::IsotropicGaussianModel(Grid mean, double scale,
                                               std::shared_ptr<const NoiseSchedule> sched)
    : ScoreModel(std::move(sched)), mean_(std::move(mean)), scale_(scale) {
    if (!(scale_ > 0.0)) throw std::invalid_argument("isotropic model: scale must be positive");
    if (!all_finite(mean_)) throw std::invalid_argument("isotropic model: non-finite mean");
}

Grid IsotropicGaussianModel::predict_eps(const Grid& z, int step_index,
                                         const ConditionEmbedding&) const {
    check_latent(z);
    const double abar = abar_at(step_index);
    const double v = marginal_var(abar, scale_);
    const double sa = std::sqrt(abar);
    const double c = std::sqrt(1.0 - abar) / v;
    Grid out = z;
    par::parallel_for(out.size(),
                      [&](std::size_t i) { out.data[i] = c * (z.data[i] - sa * mean_.data[i]); });
    return out;
}

GaussianMixtureModel::GaussianMixtureModel(std::vector<GaussianComponent> components,
                                           std::shared_ptr<const NoiseSchedule> sched)
    : ScoreModel(std::move(sched)), components_(std::move(components)) {
    if (components_.empty()) throw std::invalid_argument("mixture model: no components");
    double total = 0.0;
    for (const auto& c : components_) {
        check_component(c);
        if (c.mean.shape() != components_.front().mean.shape()) {
            throw std::invalid_argument("mixture model: component shapes differ");
        }
        total += c.weight;
    }
    for (auto& c : components_) c.weight /= total;
}

GridShape GaussianMixtureModel::data_shape() const { return components_.front().mean.shape(); }

std::vector<double> GaussianMixtureModel::responsibilities(const Grid& z, int step_index) const {
    check_latent(z);
    const double abar = abar_at(step_index);
    std::vector<double> logits(components_.size());
    for (std::size_t k = 0; k < components_.size(); ++k) {
        logits[k] = log_marginal(z, components_[k], abar);
    }
    const double m = *std::max_element(logits.begin(), logits.end());
    double denom = 0.0;
    for (double& l : logits) {
        l = std::exp(l - m);
        denom += l;
    }
    for (double& l : logits) l /= denom;
    return logits;
}

Grid GaussianMixtureModel::predict_eps(const Grid& z, int step_index,
                                       const ConditionEmbedding&) const {
    check_latent(z);
    if (components_.size() == 1) {
        const auto& c = components_.front();
        const double abar = abar_at(step_index);
        const double v = marginal_var(abar, c.scale);
        const double sa = std::sqrt(abar);
        const double f = std::sqrt(1.0 - abar) / v;
        Grid out = z;
        par::parallel_for(out.size(),
                          [&](std::size_t i) { out.data[i] = f * (z.data[i] - sa * c.mean.data[i]); });
        return out;
    }
    const double abar = abar_at(step_index);
    const std::vector<double> resp = responsibilities(z, step_index);
    const double sa = std::sqrt(abar);
    const double root = std::sqrt(1.0 - abar);
    std::vector<double> factor(components_.size());
    for (std::size_t k = 0; k < components_.size(); ++k) {
        factor[k] = resp[k] * root / marginal_var(abar, components_[k].scale);
    }
    Grid out(z.height, z.width, z.channels, 0.0);
    par::parallel_for(out.size(), [&](std::size_t i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < components_.size(); ++k) {
            acc += factor[k] * (z.data[i] - sa * components_[k].mean.data[i]);
        }
        out.data[i] = acc;
    });
    return out;
}

namespace {

double embedding_distance_sq(const ConditionEmbedding& a, const ConditionEmbedding& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.style_slot.size(); ++i) {
        const double t = a.style_slot[i] - b.style_slot[i];
        d += t * t;
    }
    for (std::size_t i = 0; i < a.content_slot.size(); ++i) {
        const double t = a.content_slot[i] - b.content_slot[i];
        d += t * t;
    }
    return d;
}

}  // namespace

ConditionalMixtureModel::ConditionalMixtureModel(std::vector<LabeledMixture> entries,
                                                 std::shared_ptr<const NoiseSchedule> sched)
    : ScoreModel(sched) {
    if (entries.empty()) throw std::invalid_argument("conditional model: empty registry");
    style_dim_ = static_cast<int>(entries.front().embedding.style_slot.size());
    content_dim_ = static_cast<int>(entries.front().embedding.content_slot.size());
    std::vector<GaussianComponent> pooled;
    const double label_weight = 1.0 / static_cast<double>(entries.size());
    for (auto& e : entries) {
        if (e.embedding.null_flag) {
            throw std::invalid_argument("conditional model: registered embeddings must not be null");
        }
        if (static_cast<int>(e.embedding.style_slot.size()) != style_dim_ ||
            static_cast<int>(e.embedding.content_slot.size()) != content_dim_) {
            throw std::invalid_argument("conditional model: embedding dimension mismatch between labels");
        }
        names_.push_back(e.label);
        embeddings_.push_back(e.embedding);
        models_.push_back(std::make_unique<GaussianMixtureModel>(e.components, sched));
        // pooled mixture takes each label's normalized components at uniform label weight
        for (const auto& c : models_.back()->components()) {
            GaussianComponent pc = c;
            pc.weight = c.weight * label_weight;
            pooled.push_back(std::move(pc));
        }
    }
    pooled_ = std::make_unique<GaussianMixtureModel>(std::move(pooled), sched);
    for (const auto& m : models_) {
        if (m->data_shape() != models_.front()->data_shape()) {
            throw std::invalid_argument("conditional model: label data shapes differ");
        }
    }
}

GridShape ConditionalMixtureModel::data_shape() const { return models_.front()->data_shape(); }

int ConditionalMixtureModel::find_label(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return static_cast<int>(i);
    }
    return -1;
}

int ConditionalMixtureModel::match_label(const ConditionEmbedding& cond) const {
    if (cond.null_flag) throw std::invalid_argument("match_label: null condition has no label");
    if (static_cast<int>(cond.style_slot.size()) != style_dim_ ||
        static_cast<int>(cond.content_slot.size()) != content_dim_) {
        throw std::invalid_argument("match_label: embedding dimension mismatch");
    }
    int best = 0;
    double best_d = embedding_distance_sq(cond, embeddings_[0]);
    for (std::size_t i = 1; i < embeddings_.size(); ++i) {
        const double d = embedding_distance_sq(cond, embeddings_[i]);
        if (d < best_d) {  // ties keep the lower index
            best_d = d;
            best = static_cast<int>(i);
        }
    }
    return best;
}

Grid ConditionalMixtureModel::predict_eps(const Grid& z, int step_index,
                                          const ConditionEmbedding& cond) const {
    if (cond.null_flag) return pooled_->predict_eps(z, step_index, cond);
    return models_[match_label(cond)]->predict_eps(z, step_index, cond);
}

std::vector<double> extract_style(const Grid& img) {
    if (!all_finite(img)) throw std::invalid_argument("extract_style: non-finite input");
    const int c = img.channels;
    const std::size_t plane = static_cast<std::size_t>(img.height) * img.width;
    std::vector<double> out;
    out.reserve(2 * c + 8);
    std::vector<double> means(c), stds(c);
    for (int ch = 0; ch < c; ++ch) {
        const double* p = img.data.data() + static_cast<std::size_t>(ch) * plane;
        double m = 0.0;
        for (std::size_t i = 0; i < plane; ++i) m += p[i];
        m /= static_cast<double>(plane);
        double var = 0.0;
        for (std::size_t i = 0; i < plane; ++i) {
            const double d = p[i] - m;
            var += d * d;
        }
        means[ch] = m;
        stds[ch] = std::sqrt(var / static_cast<double>(plane));
    }
    out.insert(out.end(), means.begin(), means.end());
    out.insert(out.end(), stds.begin(), stds.end());

    // 8-bin radial spectral energy profile; bin 0 includes DC, radii at or
    // beyond the Nyquist edge land in the last bin.
    const Spectrum f = fft2(img);
    std::vector<double> bins(8, 0.0);
    const int cy = img.height / 2, cx = img.width / 2;
    const double nyquist = 0.5 * static_cast<double>(std::min(img.height, img.width));
    for (int ch = 0; ch < c; ++ch) {
        for (int y = 0; y < img.height; ++y) {
            for (int x = 0; x < img.width; ++x) {
                const double dy = y - cy, dx = x - cx;
                const double r = std::sqrt(dy * dy + dx * dx) / nyquist;
                int b = static_cast<int>(r * 8.0);
                if (b > 7) b = 7;
                bins[b] += std::norm(f.at(ch, y, x));
            }
        }
    }
    out.insert(out.end(), bins.begin(), bins.end());
    return out;
}

std::vector<double> extract_content(const Grid& img) {
    if (img.height < 8 || img.width < 8) {
        throw std::invalid_argument("extract_content: grid must be at least 8x8");
    }
    if (!all_finite(img)) throw std::invalid_argument("extract_content: non-finite input");
    const int h = img.height, w = img.width, c = img.channels;
    auto clamp = [](int v, int hi) { return v < 0 ? 0 : (v > hi ? hi : v); };
    Grid mag(h, w, 1, 0.0);
    for (int ch = 0; ch < c; ++ch) {
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                const double gx =
                    0.5 * (img.at(ch, y, clamp(x + 1, w - 1)) - img.at(ch, y, clamp(x - 1, w - 1)));
                const double gy =
                    0.5 * (img.at(ch, clamp(y + 1, h - 1), x) - img.at(ch, clamp(y - 1, h - 1), x));
                mag.at(0, y, x) += std::sqrt(gx * gx + gy * gy) / static_cast<double>(c);
            }
        }
    }
    std::vector<double> pooled(64, 0.0);
    for (int by = 0; by < 8; ++by) {
        const int y0 = by * h / 8, y1 = (by + 1) * h / 8;
        for (int bx = 0; bx < 8; ++bx) {
            const int x0 = bx * w / 8, x1 = (bx + 1) * w / 8;
            double acc = 0.0;
            for (int y = y0; y < y1; ++y) {
                for (int x = x0; x < x1; ++x) acc += mag.at(0, y, x);
            }
            pooled[by * 8 + bx] = acc / static_cast<double>((y1 - y0) * (x1 - x0));
        }
    }
    return pooled;
}

namespace {

Grid parse_mean(const json& j, int h, int w, int c) {
    if (j.is_number()) return Grid(h, w, c, j.get<double>());
    if (!j.is_array()) throw std::invalid_argument("model json: mean must be a number or nested array");
    Grid g(h, w, c, 0.0);
    // accept [h][w] when there is a single channel, else [c][h][w]
    const json& channels = (c == 1 && j.size() == static_cast<std::size_t>(h)) ? json::array({j}) : j;
    if (channels.size() != static_cast<std::size_t>(c)) {
        throw std::invalid_argument("model json: mean channel count mismatch");
    }
    for (int ch = 0; ch < c; ++ch) {
        const json& rows = channels[ch];
        if (!rows.is_array() || rows.size() != static_cast<std::size_t>(h)) {
            throw std::invalid_argument("model json: mean row count mismatch");
        }
        for (int y = 0; y < h; ++y) {
            const json& row = rows[y];
            if (!row.is_array() || row.size() != static_cast<std::size_t>(w)) {
                throw std::invalid_argument("model json: mean column count mismatch");
            }
            for (int x = 0; x < w; ++x) g.at(ch, y, x) = row[x].get<double>();
        }
    }
    return g;
}

}  // namespace

std::shared_ptr<ConditionalMixtureModel> load_model_json(std::istream& in,
                                                         std::shared_ptr<const NoiseSchedule> sched) {
    json doc = json::parse(in);
    const int h = doc.at("height").get<int>();
    const int w = doc.at("width").get<int>();
    const int c = doc.value("channels", 1);
    std::vector<ConditionalMixtureModel::LabeledMixture> entries;
    for (const json& jl : doc.at("labels")) {
        ConditionalMixtureModel::LabeledMixture e;
        e.label = jl.at("name").get<std::string>();
        for (const json& jc : jl.at("components")) {
            GaussianComponent comp;
            comp.mean = parse_mean(jc.at("mean"), h, w, c);
            comp.scale = jc.at("scale").get<double>();
            comp.weight = jc.value("weight", 1.0);
            e.components.push_back(std::move(comp));
        }
        if (e.components.empty()) {
            throw std::invalid_argument("model json: label '" + e.label + "' has no components");
        }
        if (jl.contains("style_slot") || jl.contains("content_slot")) {
            e.embedding.style_slot = jl.at("style_slot").get<std::vector<double>>();
            e.embedding.content_slot = jl.at("content_slot").get<std::vector<double>>();
        } else {
            e.embedding.style_slot = extract_style(e.components.front().mean);
            e.embedding.content_slot = extract_content(e.components.front().mean);
        }
        entries.push_back(std::move(e));
    }
    return std::make_shared<ConditionalMixtureModel>(std::move(entries), std::move(sched));
}

std::shared_ptr<ConditionalMixtureModel> load_model_file(const std::string& path,
                                                         std::shared_ptr<const NoiseSchedule> sched) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    return load_model_json(in, std::move(sched));
}

}  // namespace ssp
