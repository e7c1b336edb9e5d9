#include "ssp/filters.hpp"

#include <cmath>
#include <stdexcept>

#include "ssp/parallel.hpp"

namespace ssp {

Grid make_lowpass(const FilterSpec& spec, int h, int w) {
    if (h < 2 || w < 2) throw std::invalid_argument("make_lowpass: height and width must be >= 2");
    if (spec.kind == FilterKind::gaussian) {
        if (!(spec.sigma > 0.0)) throw std::invalid_argument("make_lowpass: sigma must be positive");
    } else {
        if (!(spec.cutoff > 0.0 && spec.cutoff <= 1.0)) {
            throw std::invalid_argument("make_lowpass: cutoff must be in (0, 1]");
        }
        if (spec.order < 1) throw std::invalid_argument("make_lowpass: order must be >= 1");
    }
    Grid mask(h, w, 1);
    const int cy = h / 2, cx = w / 2;
    const double nyquist = 0.5 * static_cast<double>(h < w ? h : w);
    par::parallel_for(static_cast<std::size_t>(h) * w, [&](std::size_t idx) {
        const int y = static_cast<int>(idx) / w;
        const int x = static_cast<int>(idx) % w;
        const double dy = static_cast<double>(y - cy);
        const double dx = static_cast<double>(x - cx);
        const double r = std::sqrt(dy * dy + dx * dx) / nyquist;
        double m;
        if (spec.kind == FilterKind::gaussian) {
            m = std::exp(-(r * r) / (2.0 * spec.sigma * spec.sigma));
        } else {
            m = r == 0.0 ? 1.0 : 1.0 / (1.0 + std::pow(r / spec.cutoff, 2.0 * spec.order));
        }
        mask.data[idx] = m;
    });
    return mask;
}

Grid highpass_of(const Grid& lowpass_mask) {
    for (double v : lowpass_mask.data) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument("highpass_of: mask values must lie in [0, 1]");
        }
    }
    Grid out = lowpass_mask;
    par::parallel_for(out.size(), [&](std::size_t i) { out.data[i] = 1.0 - lowpass_mask.data[i]; });
    return out;
}

Spectrum reduce_band(const Spectrum& s, const Grid& lowpass_mask, double alpha, Band band) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("reduce_band: alpha must lie in [0, 1]");
    }
    if (lowpass_mask.height != s.height || lowpass_mask.width != s.width ||
        lowpass_mask.channels != 1) {
        throw std::invalid_argument("reduce_band: mask shape must match the spectrum's spatial shape");
    }
    Spectrum out = s;
    const std::size_t plane = static_cast<std::size_t>(s.height) * s.width;
    par::parallel_for(out.size(), [&](std::size_t i) {
        const double m = lowpass_mask.data[i % plane];
        const double wgt = band == Band::low ? alpha * m + (1.0 - m) : m + alpha * (1.0 - m);
        out.data[i] = s.data[i] * wgt;
    });
    return out;
}

double band_energy(const Spectrum& s, const Grid& mask) {
    if (mask.height != s.height || mask.width != s.width || mask.channels != 1) {
        throw std::invalid_argument("band_energy: mask shape must match the spectrum's spatial shape");
    }
    const std::size_t plane = static_cast<std::size_t>(s.height) * s.width;
    return par::blocked_sum(s.size(), [&](std::size_t i) {
        const double m = mask.data[i % plane];
        const double re = s.data[i].real() * m;
        const double im = s.data[i].imag() * m;
        return re * re + im * im;
    });
}

}  // namespace ssp
