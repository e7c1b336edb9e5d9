#include "ssp/fft.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ssp/parallel.hpp"

namespace ssp {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

// In-place iterative radix-2 Cooley-Tukey, no normalization.
void fft_pow2(cd* a, std::size_t n, bool inverse) {
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
        const cd wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cd w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cd u = a[i + k];
                const cd v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// Bluestein chirp-z: expresses a length-n DFT as a power-of-two convolution,
// enabling arbitrary (including prime) sizes.
void fft_bluestein(cd* a, std::size_t n, bool inverse) {
    const std::size_t m = next_pow2(2 * n + 1);
    const double sign = inverse ? 1.0 : -1.0;
    std::vector<cd> chirp(n);
    for (std::size_t k = 0; k < n; ++k) {
        // k^2 mod 2n keeps the phase argument small and exact.
        const std::uint64_t k2 = (static_cast<std::uint64_t>(k) * k) % (2 * n);
        chirp[k] = std::polar(1.0, sign * kPi * static_cast<double>(k2) / static_cast<double>(n));
    }
    std::vector<cd> fa(m, cd(0.0, 0.0)), fb(m, cd(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) fa[k] = a[k] * chirp[k];
    fb[0] = cd(1.0, 0.0);
    for (std::size_t k = 1; k < n; ++k) {
        fb[k] = std::conj(chirp[k]);
        fb[m - k] = fb[k];
    }
    fft_pow2(fa.data(), m, false);
    fft_pow2(fb.data(), m, false);
    for (std::size_t i = 0; i < m; ++i) fa[i] *= fb[i];
    fft_pow2(fa.data(), m, true);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k) a[k] = fa[k] * inv_m * chirp[k];
}

void fft_1d(cd* a, std::size_t n, bool inverse) {
    if (n <= 1) return;
    if (is_pow2(n)) {
        fft_pow2(a, n, inverse);
    } else {
        fft_bluestein(a, n, inverse);
    }
}

// Row then column transforms of one h*w channel buffer, no normalization.
void transform_rows_cols(std::vector<cd>& buf, int h, int w, bool inverse) {
    const bool go_wide = static_cast<std::size_t>(h) * w >= par::kGrain;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (go_wide)
#endif
    for (std::int64_t y = 0; y < h; ++y) {
        fft_1d(buf.data() + static_cast<std::size_t>(y) * w, static_cast<std::size_t>(w), inverse);
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (go_wide)
#endif
    for (std::int64_t x = 0; x < w; ++x) {
        std::vector<cd> col(static_cast<std::size_t>(h));
        for (int y = 0; y < h; ++y) col[y] = buf[static_cast<std::size_t>(y) * w + x];
        fft_1d(col.data(), col.size(), inverse);
        for (int y = 0; y < h; ++y) buf[static_cast<std::size_t>(y) * w + x] = col[y];
    }
}

// Index map that moves the DC bin to (h/2, w/2); a bijection, applied to the
// read index on the way back.
inline int shifted(int i, int n) { return (i + n / 2) % n; }

void check_spatial(const Grid& g) {
    if (g.height < 2 || g.width < 2) {
        throw std::invalid_argument("fft2: height and width must be >= 2");
    }
    if (!all_finite(g)) {
        throw std::invalid_argument("fft2: non-finite input");
    }
}

}  // namespace

Spectrum fft2(const Grid& g) {
    check_spatial(g);
    const int h = g.height, w = g.width, c = g.channels;
    Spectrum out(h, w, c);
    const double scl = 1.0 / std::sqrt(static_cast<double>(h) * w);
    for (int ch = 0; ch < c; ++ch) {
        std::vector<cd> buf(static_cast<std::size_t>(h) * w);
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                buf[static_cast<std::size_t>(y) * w + x] = cd(g.at(ch, y, x), 0.0);
            }
        }
        transform_rows_cols(buf, h, w, false);
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                out.at(ch, shifted(y, h), shifted(x, w)) =
                    buf[static_cast<std::size_t>(y) * w + x] * scl;
            }
        }
    }
    return out;
}

Grid ifft2(const Spectrum& s) {
    if (s.height < 2 || s.width < 2) {
        throw std::invalid_argument("ifft2: height and width must be >= 2");
    }
    if (!all_finite(s)) {
        throw std::invalid_argument("ifft2: non-finite input");
    }
    const int h = s.height, w = s.width, c = s.channels;
    Grid out(h, w, c);
    const double scl = 1.0 / std::sqrt(static_cast<double>(h) * w);
    double max_imag = 0.0;
    for (int ch = 0; ch < c; ++ch) {
        std::vector<cd> buf(static_cast<std::size_t>(h) * w);
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                buf[static_cast<std::size_t>(y) * w + x] = s.at(ch, shifted(y, h), shifted(x, w));
            }
        }
        transform_rows_cols(buf, h, w, true);
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                const cd v = buf[static_cast<std::size_t>(y) * w + x] * scl;
                const double im = std::fabs(v.imag());
                if (im > max_imag) max_imag = im;
                out.at(ch, y, x) = v.real();
            }
        }
    }
    if (max_imag >= 1e-9) {
        throw std::runtime_error("ifft2: imaginary residue " + std::to_string(max_imag) +
                                 " exceeds 1e-9; spectrum is not Hermitian");
    }
    return out;
}

namespace ref {

Spectrum dft2(const Grid& g) {
    check_spatial(g);
    const int h = g.height, w = g.width, c = g.channels;
    Spectrum out(h, w, c);
    const double scl = 1.0 / std::sqrt(static_cast<double>(h) * w);
    for (int ch = 0; ch < c; ++ch) {
        for (int u = 0; u < h; ++u) {
            for (int v = 0; v < w; ++v) {
                cd acc(0.0, 0.0);
                for (int y = 0; y < h; ++y) {
                    for (int x = 0; x < w; ++x) {
                        const double ang = -2.0 * kPi * (static_cast<double>(u) * y / h +
                                                         static_cast<double>(v) * x / w);
                        acc += g.at(ch, y, x) * std::polar(1.0, ang);
                    }
                }
                out.at(ch, shifted(u, h), shifted(v, w)) = acc * scl;
            }
        }
    }
    return out;
}

Grid idft2(const Spectrum& s) {
    const int h = s.height, w = s.width, c = s.channels;
    if (h < 2 || w < 2) throw std::invalid_argument("idft2: height and width must be >= 2");
    Grid out(h, w, c);
    const double scl = 1.0 / std::sqrt(static_cast<double>(h) * w);
    for (int ch = 0; ch < c; ++ch) {
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                cd acc(0.0, 0.0);
                for (int u = 0; u < h; ++u) {
                    for (int v = 0; v < w; ++v) {
                        const double ang = 2.0 * kPi * (static_cast<double>(u) * y / h +
                                                        static_cast<double>(v) * x / w);
                        acc += s.at(ch, shifted(u, h), shifted(v, w)) * std::polar(1.0, ang);
                    }
                }
                out.at(ch, y, x) = (acc * scl).real();
            }
        }
    }
    return out;
}

}  // namespace ref

}  // namespace ssp
