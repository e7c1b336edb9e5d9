#pragma once

#include <vector>

namespace ssp {

// Cumulative signal coefficients over the training grid plus the sampled
// timestep subset. Deterministic DDIM only (eta = 0). Immutable once built.
struct NoiseSchedule {
    std::vector<double> alpha_bar;  // one entry per training timestep, strictly decreasing
    std::vector<int> sample_steps;  // strictly increasing subset of [0, t_train)
    double beta_start = 0.0;
    double beta_end = 0.0;

    int t_train() const { return static_cast<int>(alpha_bar.size()); }
    int t_sample() const { return static_cast<int>(sample_steps.size()); }
};

// Scaled-linear betas: sqrt(beta) interpolates linearly from sqrt(beta_start)
// to sqrt(beta_end); alpha_bar is their running product of (1 - beta).
// Sample steps are uniformly spaced, starting at 0.
NoiseSchedule build_schedule(int t_train, int t_sample, double beta_start, double beta_end);

struct DdimPair {
    double abar_t;     // alpha_bar at sample_steps[k]
    double abar_prev;  // alpha_bar at sample_steps[k-1], or exactly 1 at the clean boundary
};

DdimPair ddim_pair(const NoiseSchedule& s, int k);

}  // namespace ssp
