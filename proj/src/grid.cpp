#include "ssp/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ssp/parallel.hpp"

namespace ssp {

namespace {
void check_dims(int h, int w, int c) {
    if (h <= 0 || w <= 0 || c <= 0) {
        throw std::invalid_argument("grid dimensions must be positive, got " + std::to_string(h) +
                                    "x" + std::to_string(w) + "x" + std::to_string(c));
    }
}
}  // namespace

Grid::Grid(int h, int w, int c, double fill)
    : height(h), width(w), channels(c) {
    check_dims(h, w, c);
    data.assign(shape().size(), fill);
}

Spectrum::Spectrum(int h, int w, int c)
    : height(h), width(w), channels(c) {
    check_dims(h, w, c);
    data.assign(shape().size(), std::complex<double>(0.0, 0.0));
}

bool all_finite(const Grid& g) {
    for (double v : g.data) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

bool all_finite(const Spectrum& s) {
    for (const auto& v : s.data) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

void require_same_shape(const Grid& a, const Grid& b, const char* what) {
    if (!a.same_shape(b)) {
        throw std::invalid_argument(std::string(what) + ": shape mismatch");
    }
}

Grid add(const Grid& a, const Grid& b) {
    require_same_shape(a, b, "add");
    Grid out = a;
    par::parallel_for(out.size(), [&](std::size_t i) { out.data[i] = a.data[i] + b.data[i]; });
    return out;
}

Grid sub(const Grid& a, const Grid& b) {
    require_same_shape(a, b, "sub");
    Grid out = a;
    par::parallel_for(out.size(), [&](std::size_t i) { out.data[i] = a.data[i] - b.data[i]; });
    return out;
}

Grid scale(const Grid& a, double k) {
    Grid out = a;
    par::parallel_for(out.size(), [&](std::size_t i) { out.data[i] = a.data[i] * k; });
    return out;
}

Grid lincomb(double ca, const Grid& a, double cb, const Grid& b) {
    require_same_shape(a, b, "lincomb");
    Grid out = a;
    par::parallel_for(out.size(),
                      [&](std::size_t i) { out.data[i] = ca * a.data[i] + cb * b.data[i]; });
    return out;
}

double l2_norm(const Grid& g) {
    return std::sqrt(par::blocked_sum(g.size(), [&](std::size_t i) {
        const double v = g.data[i];
        return v * v;
    }));
}

double linf_norm(const Grid& g) {
    double m = 0.0;
    for (double v : g.data) {
        const double a = std::fabs(v);
        if (a > m) m = a;
    }
    return m;
}

double l2_distance(const Grid& a, const Grid& b) {
    require_same_shape(a, b, "l2_distance");
    return std::sqrt(par::blocked_sum(a.size(), [&](std::size_t i) {
        const double d = a.data[i] - b.data[i];
        return d * d;
    }));
}

}  // namespace ssp
