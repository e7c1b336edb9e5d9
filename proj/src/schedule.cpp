#include "ssp/schedule.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ssp {

NoiseSchedule build_schedule(int t_train, int t_sample, double beta_start, double beta_end) {
    if (t_train < 1) throw std::invalid_argument("build_schedule: t_train must be >= 1");
    if (t_sample < 1 || t_sample > t_train) {
        throw std::invalid_argument("build_schedule: need 1 <= t_sample <= t_train");
    }
    if (!(beta_start > 0.0) || !(beta_end < 1.0) || beta_start > beta_end) {
        throw std::invalid_argument("build_schedule: need 0 < beta_start <= beta_end < 1");
    }
    NoiseSchedule s;
    s.beta_start = beta_start;
    s.beta_end = beta_end;
    s.alpha_bar.resize(t_train);
    const double r0 = std::sqrt(beta_start);
    const double r1 = std::sqrt(beta_end);
    double prod = 1.0;
    for (int i = 0; i < t_train; ++i) {
        const double frac = t_train == 1 ? 0.0 : static_cast<double>(i) / (t_train - 1);
        const double root = r0 + (r1 - r0) * frac;
        prod *= 1.0 - root * root;
        s.alpha_bar[i] = prod;
    }
    if (!(s.alpha_bar[0] > 0.99)) {
        throw std::invalid_argument("build_schedule: beta_start too large, alpha_bar[0] <= 0.99");
    }
    const int ratio = t_train / t_sample;
    s.sample_steps.resize(t_sample);
    for (int k = 0; k < t_sample; ++k) s.sample_steps[k] = k * ratio;
    return s;
}

DdimPair ddim_pair(const NoiseSchedule& s, int k) {
    if (k < 0 || k >= s.t_sample()) {
        throw std::invalid_argument("ddim_pair: index " + std::to_string(k) + " out of range");
    }
    DdimPair p;
    p.abar_t = s.alpha_bar[s.sample_steps[k]];
    p.abar_prev = k > 0 ? s.alpha_bar[s.sample_steps[k - 1]] : 1.0;
    return p;
}

}  // namespace ssp
