#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace ssp {

struct GridShape {
    int height = 0;
    int width = 0;
    int channels = 0;

    std::size_t size() const {
        return static_cast<std::size_t>(height) * static_cast<std::size_t>(width) *
               static_cast<std::size_t>(channels);
    }
    bool operator==(const GridShape& o) const {
        return height == o.height && width == o.width && channels == o.channels;
    }
    bool operator!=(const GridShape& o) const { return !(*this == o); }
};

// Dense real grid, row-major within a channel, channel-planar. Serves as an
// image, a latent, or a filter mask.
struct Grid {
    int height = 0;
    int width = 0;
    int channels = 0;
    std::vector<double> data;

    Grid() = default;
    Grid(int h, int w, int c, double fill = 0.0);

    GridShape shape() const { return {height, width, channels}; }
    std::size_t size() const { return data.size(); }
    bool same_shape(const Grid& o) const { return shape() == o.shape(); }

    double& at(int c, int y, int x) {
        return data[(static_cast<std::size_t>(c) * height + y) * width + x];
    }
    double at(int c, int y, int x) const {
        return data[(static_cast<std::size_t>(c) * height + y) * width + x];
    }
};

// Complex spectrum of a Grid, same shape, DC bin at (height/2, width/2).
struct Spectrum {
    int height = 0;
    int width = 0;
    int channels = 0;
    std::vector<std::complex<double>> data;

    Spectrum() = default;
    Spectrum(int h, int w, int c);

    GridShape shape() const { return {height, width, channels}; }
    std::size_t size() const { return data.size(); }

    std::complex<double>& at(int c, int y, int x) {
        return data[(static_cast<std::size_t>(c) * height + y) * width + x];
    }
    std::complex<double> at(int c, int y, int x) const {
        return data[(static_cast<std::size_t>(c) * height + y) * width + x];
    }
};

bool all_finite(const Grid& g);
bool all_finite(const Spectrum& s);

Grid add(const Grid& a, const Grid& b);
Grid sub(const Grid& a, const Grid& b);
Grid scale(const Grid& a, double k);
// ca*a + cb*b, elementwise.
Grid lincomb(double ca, const Grid& a, double cb, const Grid& b);

double l2_norm(const Grid& g);
double linf_norm(const Grid& g);
double l2_distance(const Grid& a, const Grid& b);

void require_same_shape(const Grid& a, const Grid& b, const char* what);

}  // namespace ssp
