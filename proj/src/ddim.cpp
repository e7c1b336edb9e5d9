#include "ssp/ddim.hpp"

#include <cmath>
#include <stdexcept>

namespace ssp {

namespace {

// Shared transfer map between noise levels; from -> to in either direction.
Grid transfer(const Grid& z, const Grid& eps, double abar_from, double abar_to) {
    require_same_shape(z, eps, "ddim step");
    const double cz = std::sqrt(abar_to / abar_from);
    const double ce =
        std::sqrt(abar_to) * (std::sqrt(1.0 / abar_to - 1.0) - std::sqrt(1.0 / abar_from - 1.0));
    return lincomb(cz, z, ce, eps);
}

void check_range(double a, const char* what) {
    if (!(a > 0.0 && a <= 1.0)) {
        throw std::invalid_argument(std::string(what) + ": alpha_bar must lie in (0, 1]");
    }
}

}  // namespace

Grid ddim_step(const Grid& z_t, const Grid& eps, double abar_t, double abar_prev) {
    check_range(abar_t, "ddim_step");
    check_range(abar_prev, "ddim_step");
    if (abar_prev < abar_t) {
        throw std::invalid_argument("ddim_step: abar ordering violated (need abar_prev >= abar_t)");
    }
    return transfer(z_t, eps, abar_t, abar_prev);
}

Grid ddim_inverse_step(const Grid& z_t, const Grid& eps, double abar_t, double abar_next) {
    check_range(abar_t, "ddim_inverse_step");
    check_range(abar_next, "ddim_inverse_step");
    if (abar_next > abar_t) {
        throw std::invalid_argument(
            "ddim_inverse_step: abar ordering violated (need abar_next <= abar_t)");
    }
    return transfer(z_t, eps, abar_t, abar_next);
}

TrajectoryRecord sample(const ScoreModel& model, const NoiseSchedule& schedule, const Grid& z_T,
                        const GuidanceConfig& guidance) {
    if (z_T.shape() != model.data_shape()) {
        throw std::invalid_argument("sample: latent shape does not match the model");
    }
    TrajectoryRecord rec;
    rec.direction = TrajectoryDirection::sampling;
    rec.guidance_used = guidance;
    const int T = schedule.t_sample();
    Grid z = z_T;
    rec.entries.emplace_back(schedule.sample_steps[T - 1], z);
    for (int k = T - 1; k >= 0; --k) {
        const Grid eps = guided_eps(model, z, k, guidance);
        const DdimPair p = ddim_pair(schedule, k);
        z = ddim_step(z, eps, p.abar_t, p.abar_prev);
        rec.entries.emplace_back(k > 0 ? schedule.sample_steps[k - 1] : -1, z);
    }
    return rec;
}

TrajectoryRecord invert(const ScoreModel& model, const NoiseSchedule& schedule, const Grid& z_0,
                        const GuidanceConfig& guidance) {
    if (z_0.shape() != model.data_shape()) {
        throw std::invalid_argument("invert: latent shape does not match the model");
    }
    TrajectoryRecord rec;
    rec.direction = TrajectoryDirection::inversion;
    rec.guidance_used = guidance;
    const int T = schedule.t_sample();
    Grid z = z_0;
    rec.entries.emplace_back(-1, z);
    for (int k = 0; k < T; ++k) {
        const Grid eps = guided_eps(model, z, k, guidance);
        const DdimPair p = ddim_pair(schedule, k);
        z = ddim_inverse_step(z, eps, p.abar_prev, p.abar_t);
        rec.entries.emplace_back(schedule.sample_steps[k], z);
    }
    return rec;
}

}  // namespace ssp
