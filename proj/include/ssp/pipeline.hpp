#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ssp/ddim.hpp"
#include "ssp/grid.hpp"
#include "ssp/schedule.hpp"
#include "ssp/score_models.hpp"
#include "ssp/startpoint.hpp"

namespace ssp {

struct TransferConfig {
    Grid content;
    Grid style;
    ConditionEmbedding positive_condition = ConditionEmbedding::null_condition();
    double omega_i = 1.5;
    double cfg_omega = 5.0;
    StartpointSpec startpoint{};  // freq_manipulated, alpha 0.7, gaussian sigma 0.3
    int steps = 50;
    std::uint64_t seed = 0;
};

struct TransferResult {
    Grid output;
    Grid startpoint_latent;  // the manipulated z_T the sampling stage started from
    TrajectoryRecord inversion_trajectory;
    TrajectoryRecord sampling_trajectory;
    // Always contains content_l2, low_band_ratio, style_embedding_distance.
    std::map<std::string, double> metrics;
    // Fully resolved configuration with seeds, serialized by the io layer.
    std::map<std::string, std::string> manifest;
};

// End-to-end transfer:
//   1. negative embedding from (style of content, content of style)
//   2. inversion of the content latent under negative guidance at omega_i
//   3. startpoint manipulation per cfg.startpoint (seeded with cfg.seed)
//   4. sampling from the manipulated latent with cfg guidance at cfg_omega
//      toward a style-slot-only condition extracted from the style image
//   5. metrics over output, content, style and the manipulated latent
// Any stage failure is rethrown with the stage name prefixed.
TransferResult style_transfer(const ScoreModel& model, const NoiseSchedule& schedule,
                              const TransferConfig& cfg);

// One transfer per startpoint kind with otherwise identical configuration
// (seed included). Runs are independent and execute in parallel; results come
// back in input order.
std::vector<TransferResult> ablate_startpoints(const ScoreModel& model,
                                               const NoiseSchedule& schedule,
                                               const TransferConfig& base_cfg,
                                               const std::vector<StartpointKind>& kinds);

struct SweepRow {
    double sigma = 0.0;
    double alpha = 0.0;
    double content_l2 = 0.0;
    double low_band_ratio = 0.0;
    double style_embedding_distance = 0.0;
};

struct SweepTable {
    std::vector<SweepRow> rows;
    std::string to_csv() const;
};

// Full sigma x alpha cross-product of freq_manipulated transfers.
SweepTable filter_sweep(const ScoreModel& model, const NoiseSchedule& schedule,
                        const TransferConfig& base_cfg, const std::vector<double>& sigmas,
                        const std::vector<double>& alphas);

}  // namespace ssp
