#pragma once

#include "ssp/grid.hpp"

namespace ssp {

enum class FilterKind { gaussian, butterworth };

struct FilterSpec {
    FilterKind kind = FilterKind::gaussian;
    double sigma = 0.3;   // gaussian width on the normalized radial axis
    double cutoff = 0.5;  // butterworth cutoff, in (0, 1]
    int order = 2;        // butterworth order
};

enum class Band { low, high };

// Single-channel low-pass mask in [0, 1], DC value exactly 1. The radial
// coordinate is normalized so r = 1 lies min(h, w)/2 bins from the center,
// i.e. at the nearest Nyquist edge.
//   gaussian:    M = exp(-r^2 / (2 sigma^2))
//   butterworth: M = 1 / (1 + (r/cutoff)^(2 order))
Grid make_lowpass(const FilterSpec& spec, int h, int w);

// 1 - M, pointwise. Together with the input this partitions unity exactly.
Grid highpass_of(const Grid& lowpass_mask);

// Attenuates one band of a spectrum by alpha, leaving the other untouched.
// Computed per bin as s * (alpha*M + (1-M)) for band=low and
// s * (M + alpha*(1-M)) for band=high, which makes alpha=1 an exact identity.
Spectrum reduce_band(const Spectrum& s, const Grid& lowpass_mask, double alpha, Band band);

// Sum over bins of |s * M|^2, accumulated across channels.
double band_energy(const Spectrum& s, const Grid& mask);

}  // namespace ssp
