#include "ssp/guidance.hpp"

#include <cmath>
#include <stdexcept>

#include "ssp/parallel.hpp"

namespace ssp {

namespace {

void check_scale(double w, const char* what) {
    if (!std::isfinite(w) || w < 0.0) {
        throw std::invalid_argument(std::string(what) + ": scale must be finite and non-negative");
    }
}

Grid extrapolate(const Grid& from, const Grid& toward, double w, const char* what) {
    check_scale(w, what);
    require_same_shape(from, toward, what);
    if (w == 0.0) return from;
    if (w == 1.0) return toward;
    Grid out = from;
    par::parallel_for(out.size(), [&](std::size_t i) {
        out.data[i] = from.data[i] + w * (toward.data[i] - from.data[i]);
    });
    return out;
}

}  // namespace

Grid cfg_combine(const Grid& eps_uncond, const Grid& eps_cond, double omega) {
    return extrapolate(eps_uncond, eps_cond, omega, "cfg_combine");
}

Grid negative_combine(const Grid& eps_neg, const Grid& eps_pos, double omega_i) {
    return extrapolate(eps_neg, eps_pos, omega_i, "negative_combine");
}

Grid dual_scale_combine(const Grid& eps_base, const Grid& eps_pos, const Grid& eps_neg,
                        double omega_plus, double omega_minus) {
    check_scale(omega_plus, "dual_scale_combine");
    check_scale(omega_minus, "dual_scale_combine");
    require_same_shape(eps_base, eps_pos, "dual_scale_combine");
    require_same_shape(eps_base, eps_neg, "dual_scale_combine");
    Grid out = eps_base;
    par::parallel_for(out.size(), [&](std::size_t i) {
        const double b = eps_base.data[i];
        out.data[i] = b + omega_plus * (eps_pos.data[i] - b) - omega_minus * (eps_neg.data[i] - b);
    });
    return out;
}

ConditionEmbedding build_negative_embedding(std::vector<double> style_of_content,
                                            std::vector<double> content_of_style) {
    for (double v : style_of_content) {
        if (!std::isfinite(v)) throw std::invalid_argument("build_negative_embedding: non-finite style slot");
    }
    for (double v : content_of_style) {
        if (!std::isfinite(v)) throw std::invalid_argument("build_negative_embedding: non-finite content slot");
    }
    ConditionEmbedding e;
    e.style_slot = std::move(style_of_content);
    e.content_slot = std::move(content_of_style);
    e.null_flag = false;
    return e;
}

Grid guided_eps(const ScoreModel& model, const Grid& z, int step_index, const GuidanceConfig& cfg) {
    switch (cfg.mode) {
        case GuidanceMode::none:
            return model.predict_eps(z, step_index, cfg.positive);
        case GuidanceMode::cfg: {
            const Grid u = model.predict_eps(z, step_index, ConditionEmbedding::null_condition());
            const Grid c = model.predict_eps(z, step_index, cfg.positive);
            return cfg_combine(u, c, cfg.omega);
        }
        case GuidanceMode::negative: {
            const Grid n = model.predict_eps(z, step_index, cfg.negative);
            const Grid p = model.predict_eps(z, step_index, cfg.positive);
            return negative_combine(n, p, cfg.omega_i);
        }
        case GuidanceMode::dual: {
            const Grid b = model.predict_eps(z, step_index, ConditionEmbedding::null_condition());
            const Grid p = model.predict_eps(z, step_index, cfg.positive);
            const Grid n = model.predict_eps(z, step_index, cfg.negative);
            return dual_scale_combine(b, p, n, cfg.omega_plus, cfg.omega_minus);
        }
    }
    throw std::invalid_argument("guided_eps: unknown guidance mode");
}

}  // namespace ssp
