#pragma once

#include <utility>
#include <vector>

#include "ssp/grid.hpp"
#include "ssp/guidance.hpp"
#include "ssp/schedule.hpp"
#include "ssp/score_models.hpp"

namespace ssp {

enum class TrajectoryDirection { sampling, inversion };

// Ordered (training timestep, latent) pairs from one driver run. Timesteps are
// strictly decreasing for sampling and strictly increasing for inversion; the
// clean endpoint (alpha_bar = 1) is recorded with timestep -1.
struct TrajectoryRecord {
    TrajectoryDirection direction = TrajectoryDirection::sampling;
    std::vector<std::pair<int, Grid>> entries;
    GuidanceConfig guidance_used;

    const Grid& final_latent() const { return entries.back().second; }
};

// One deterministic update from alpha_bar_t toward alpha_bar_prev (closer to
// the data end). Computed as
//   sqrt(abar_prev/abar_t) * z + sqrt(abar_prev) *
//       (sqrt(1/abar_prev - 1) - sqrt(1/abar_t - 1)) * eps,
// i.e. the epsilon coefficient is grouped with sqrt(abar_prev) factored out.
// Requires 0 < abar_t <= abar_prev <= 1; eps = 0 with equal coefficients
// leaves z unchanged.
Grid ddim_step(const Grid& z_t, const Grid& eps, double abar_t, double abar_prev);

// Exact algebraic inverse of ddim_step when the same eps is supplied; moves
// from alpha_bar_t toward alpha_bar_next (the noisier end).
// Requires 0 < abar_next <= abar_t <= 1.
Grid ddim_inverse_step(const Grid& z_t, const Grid& eps, double abar_t, double abar_next);

// Walks sample steps in decreasing order from z_T to the clean latent. Each
// step queries the model once per branch required by the guidance mode and
// evaluates epsilon at the current latent with the current step index.
TrajectoryRecord sample(const ScoreModel& model, const NoiseSchedule& schedule, const Grid& z_T,
                        const GuidanceConfig& guidance);

// Walks sample steps in increasing order from z_0 to z_T. Step k evaluates the
// model at the current latent with step index k (the interval's noisier
// timestep); no fixed-point correction is applied.
TrajectoryRecord invert(const ScoreModel& model, const NoiseSchedule& schedule, const Grid& z_0,
                        const GuidanceConfig& guidance);

}  // namespace ssp
