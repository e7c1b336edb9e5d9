#pragma once

#include <cstdint>
#include <string>

#include "ssp/filters.hpp"
#include "ssp/grid.hpp"

namespace ssp {

enum class StartpointKind { inversion, random, noised, shifted, scaled, freq_manipulated };

const char* startpoint_kind_name(StartpointKind kind);
StartpointKind startpoint_kind_from_name(const std::string& name);

struct StartpointSpec {
    StartpointKind kind = StartpointKind::freq_manipulated;
    double alpha = 0.7;
    double noise_sigma = 1.0;  // std of the additive noise term; a separate knob from filter.sigma
    FilterSpec filter{};       // gaussian, sigma 0.3
    std::uint64_t seed = 0;
    bool scaled_per_element = false;  // default: one shared multiplier per grid
};

// Low-frequency-reduced latent: attenuate the low band of z_T's spectrum by
// alpha, transform back, and add spatial-domain Gaussian noise scaled by
// (1 - alpha). alpha = 1 is the exact identity (no transform, zero noise).
// Noise is drawn i.i.d. per element in data order from the seeded "noise"
// stream, so the result is a pure function of (z_T, filter, alpha,
// noise_sigma, seed).
Grid frequency_manipulate(const Grid& z_T, const FilterSpec& filter, double alpha,
                          double noise_sigma, std::uint64_t seed);

// Startpoint family used by the ablation drivers:
//   inversion         z_T unchanged
//   random            fresh N(0, 1) grid
//   noised            z_T + N(0, 1) per element
//   shifted           z_T + U(-0.5, 0.5) per element
//   scaled            z_T times one shared U(0.5, 1) draw
//                     (per-element draws behind scaled_per_element)
//   freq_manipulated  frequency_manipulate with the spec's parameters
Grid make_variant(const Grid& z_T, const StartpointSpec& spec);

}  // namespace ssp
