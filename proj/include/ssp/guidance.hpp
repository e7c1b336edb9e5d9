#pragma once

#include "ssp/grid.hpp"
#include "ssp/score_models.hpp"

namespace ssp {

enum class GuidanceMode { none, cfg, negative, dual };

struct GuidanceConfig {
    GuidanceMode mode = GuidanceMode::none;
    double omega = 1.0;        // cfg scale
    double omega_i = 1.5;      // negative guidance scale
    double omega_plus = 1.0;   // dual form, positive scale
    double omega_minus = 0.0;  // dual form, negative scale
    ConditionEmbedding positive = ConditionEmbedding::null_condition();
    ConditionEmbedding negative = ConditionEmbedding::null_condition();
};

// eps_uncond + omega * (eps_cond - eps_uncond). omega = 0 and omega = 1 return
// the respective branch unchanged.
Grid cfg_combine(const Grid& eps_uncond, const Grid& eps_cond, double omega);

// eps_neg + omega_i * (eps_pos - eps_neg); the unconditional branch of the cfg
// rule replaced by the undesired condition. Same exact-endpoint behavior.
Grid negative_combine(const Grid& eps_neg, const Grid& eps_pos, double omega_i);

// eps_base + omega_plus * (eps_pos - eps_base) - omega_minus * (eps_neg - eps_base).
// Reduces to cfg_combine at omega_minus = 0 and to negative_combine at
// eps_base = eps_neg, omega_i = omega_plus.
Grid dual_scale_combine(const Grid& eps_base, const Grid& eps_pos, const Grid& eps_neg,
                        double omega_plus, double omega_minus);

// Embedding whose style slot holds the content image's style descriptor and
// whose content slot holds the style image's content descriptor. Slots are
// stored verbatim; null_flag is false even for all-zero vectors.
ConditionEmbedding build_negative_embedding(std::vector<double> style_of_content,
                                            std::vector<double> content_of_style);

// Queries the model once per branch required by cfg.mode and applies the
// matching combinator.
Grid guided_eps(const ScoreModel& model, const Grid& z, int step_index, const GuidanceConfig& cfg);

}  // namespace ssp
