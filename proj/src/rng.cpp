#include "ssp/rng.hpp"

#include <cmath>
#include <numbers>

namespace ssp {

namespace {
constexpr std::uint64_t kMult = 6364136223846793005ULL;
}

std::uint64_t SeededRng::stream_id_for(std::string_view label) {
    // FNV-1a, stable across platforms.
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : label) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

SeededRng::SeededRng(std::uint64_t seed, std::string_view stream_label)
    : SeededRng(seed, stream_id_for(stream_label)) {}

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream_id) {
    state_ = 0;
    inc_ = (stream_id << 1u) | 1u;
    (void)next_u32();
    state_ += seed;
    (void)next_u32();
}

std::uint32_t SeededRng::next_u32() {
    const std::uint64_t old = state_;
    state_ = old * kMult + inc_;
    const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    const auto rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
}

std::uint64_t SeededRng::next_u64() {
    const std::uint64_t hi = next_u32();
    const std::uint64_t lo = next_u32();
    return (hi << 32u) | lo;
}

double SeededRng::uniform() {
    return static_cast<double>(next_u64() >> 11u) * 0x1.0p-53;
}

double SeededRng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double SeededRng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // u1 in (0, 1] so the log is finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

double SeededRng::normal(double mean, double stddev) {
    return mean + stddev * normal();
}

}  // namespace ssp
