#include "ssp/startpoint.hpp"

#include <stdexcept>

#include "ssp/fft.hpp"
#include "ssp/rng.hpp"

namespace ssp {

const char* startpoint_kind_name(StartpointKind kind) {
    switch (kind) {
        case StartpointKind::inversion: return "inversion";
        case StartpointKind::random: return "random";
        case StartpointKind::noised: return "noised";
        case StartpointKind::shifted: return "shifted";
        case StartpointKind::scaled: return "scaled";
        case StartpointKind::freq_manipulated: return "freq_manipulated";
    }
    return "unknown";
}

StartpointKind startpoint_kind_from_name(const std::string& name) {
    if (name == "inversion") return StartpointKind::inversion;
    if (name == "random") return StartpointKind::random;
    if (name == "noised") return StartpointKind::noised;
    if (name == "shifted") return StartpointKind::shifted;
    if (name == "scaled") return StartpointKind::scaled;
    if (name == "freq_manipulated") return StartpointKind::freq_manipulated;
    throw std::invalid_argument("unknown startpoint kind: " + name);
}

Grid frequency_manipulate(const Grid& z_T, const FilterSpec& filter, double alpha,
                          double noise_sigma, std::uint64_t seed) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("frequency_manipulate: alpha must lie in [0, 1]");
    }
    if (!(noise_sigma >= 0.0)) {
        throw std::invalid_argument("frequency_manipulate: noise_sigma must be >= 0");
    }
    if (alpha == 1.0) return z_T;  // identity manipulation, noise term scaled by zero

    const Grid mask = make_lowpass(filter, z_T.height, z_T.width);
    Grid out = ifft2(reduce_band(fft2(z_T), mask, alpha, Band::low));
    if (noise_sigma > 0.0) {
        SeededRng rng(seed, "noise");
        const double gain = 1.0 - alpha;
        for (double& v : out.data) v += gain * rng.normal(0.0, noise_sigma);
    }
    return out;
}

Grid make_variant(const Grid& z_T, const StartpointSpec& spec) {
    switch (spec.kind) {
        case StartpointKind::inversion:
            return z_T;
        case StartpointKind::random: {
            SeededRng rng(spec.seed, "variant");
            Grid out(z_T.height, z_T.width, z_T.channels, 0.0);
            for (double& v : out.data) v = rng.normal();
            return out;
        }
        case StartpointKind::noised: {
            SeededRng rng(spec.seed, "variant");
            Grid out = z_T;
            for (double& v : out.data) v += rng.normal();
            return out;
        }
        case StartpointKind::shifted: {
            SeededRng rng(spec.seed, "variant");
            Grid out = z_T;
            for (double& v : out.data) v += rng.uniform(-0.5, 0.5);
            return out;
        }
        case StartpointKind::scaled: {
            SeededRng rng(spec.seed, "variant");
            Grid out = z_T;
            if (spec.scaled_per_element) {
                for (double& v : out.data) v *= rng.uniform(0.5, 1.0);
            } else {
                const double u = rng.uniform(0.5, 1.0);
                for (double& v : out.data) v *= u;
            }
            return out;
        }
        case StartpointKind::freq_manipulated:
            return frequency_manipulate(z_T, spec.filter, spec.alpha, spec.noise_sigma, spec.seed);
    }
    throw std::invalid_argument("make_variant: unknown startpoint kind");
}

}  // namespace ssp
