#include "ssp/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ssp {

namespace {

constexpr char kMagic[4] = {'S', 'S', 'P', 'G'};
constexpr std::uint32_t kMaxDim = 1u << 20;

void put_u32_le(std::ostream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32_le(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw std::runtime_error("grid read: truncated header");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64_le(std::ostream& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
    out.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64_le(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    if (!in) throw std::runtime_error("grid read: truncated data");
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_grid_raw(std::ostream& out, const Grid& g) {
    if (!all_finite(g)) throw std::invalid_argument("write_grid_raw: non-finite values");
    out.write(kMagic, 4);
    put_u32_le(out, static_cast<std::uint32_t>(g.height));
    put_u32_le(out, static_cast<std::uint32_t>(g.width));
    put_u32_le(out, static_cast<std::uint32_t>(g.channels));
    for (double v : g.data) put_f64_le(out, v);
    if (!out) throw std::runtime_error("write_grid_raw: write failed");
}

Grid read_grid_raw(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0) {
        throw std::runtime_error("read_grid_raw: magic mismatch");
    }
    const std::uint32_t h = get_u32_le(in);
    const std::uint32_t w = get_u32_le(in);
    const std::uint32_t c = get_u32_le(in);
    if (h == 0 || w == 0 || c == 0 || h > kMaxDim || w > kMaxDim || c > kMaxDim ||
        static_cast<std::uint64_t>(h) * w * c > (1ull << 28)) {
        throw std::runtime_error("read_grid_raw: dimension overflow");
    }
    Grid g(static_cast<int>(h), static_cast<int>(w), static_cast<int>(c));
    for (double& v : g.data) v = get_f64_le(in);
    return g;
}

void write_grid_pgm(std::ostream& out, const Grid& g, int channel) {
    if (channel < 0 || channel >= g.channels) {
        throw std::invalid_argument("write_grid_pgm: channel out of range");
    }
    if (!all_finite(g)) throw std::invalid_argument("write_grid_pgm: non-finite values");
    double lo = g.at(channel, 0, 0), hi = lo;
    for (int y = 0; y < g.height; ++y) {
        for (int x = 0; x < g.width; ++x) {
            const double v = g.at(channel, y, x);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    out << "P5\n# range " << format_double(lo) << ' ' << format_double(hi) << '\n'
        << g.width << ' ' << g.height << "\n65535\n";
    const double span = hi - lo;
    for (int y = 0; y < g.height; ++y) {
        for (int x = 0; x < g.width; ++x) {
            const double v = g.at(channel, y, x);
            const double unit = span > 0.0 ? (v - lo) / span : 0.0;
            const auto q = static_cast<std::uint16_t>(std::lround(unit * 65535.0));
            const unsigned char b[2] = {static_cast<unsigned char>(q >> 8),
                                        static_cast<unsigned char>(q & 0xff)};
            out.write(reinterpret_cast<const char*>(b), 2);
        }
    }
    if (!out) throw std::runtime_error("write_grid_pgm: write failed");
}

Grid read_grid_pgm(std::istream& in) {
    std::string magic;
    in >> magic;
    if (magic != "P5") throw std::runtime_error("read_grid_pgm: magic mismatch");
    in.ignore();  // newline after magic
    double lo = 0.0, hi = 0.0;
    bool have_range = false;
    while (in.peek() == '#') {
        std::string line;
        std::getline(in, line);
        std::istringstream ls(line);
        std::string hash, tag;
        ls >> hash >> tag;
        if (tag == "range") {
            ls >> lo >> hi;
            have_range = true;
        }
    }
    int w = 0, h = 0, maxval = 0;
    in >> w >> h >> maxval;
    if (!in || w <= 0 || h <= 0) throw std::runtime_error("read_grid_pgm: bad dimensions");
    if (maxval != 65535) throw std::runtime_error("read_grid_pgm: expected 16-bit maxval 65535");
    if (static_cast<std::uint64_t>(w) * h > (1ull << 28)) {
        throw std::runtime_error("read_grid_pgm: dimension overflow");
    }
    in.ignore();  // single whitespace before binary payload
    if (!have_range) {
        lo = 0.0;
        hi = 1.0;
    }
    Grid g(h, w, 1);
    const double span = hi - lo;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            unsigned char b[2];
            in.read(reinterpret_cast<char*>(b), 2);
            if (!in) throw std::runtime_error("read_grid_pgm: truncated data");
            const std::uint16_t q = static_cast<std::uint16_t>((b[0] << 8) | b[1]);
            g.at(0, y, x) = lo + span * (static_cast<double>(q) / 65535.0);
        }
    }
    return g;
}

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

void write_grid(const std::string& path, const Grid& g) {
    if (ends_with(path, ".pgm")) {
        if (g.channels == 1) {
            std::ofstream out(path, std::ios::binary);
            if (!out) throw std::runtime_error("write_grid: cannot open " + path);
            write_grid_pgm(out, g, 0);
            return;
        }
        const std::string stem = path.substr(0, path.size() - 4);
        for (int c = 0; c < g.channels; ++c) {
            const std::string p = stem + "_c" + std::to_string(c) + ".pgm";
            std::ofstream out(p, std::ios::binary);
            if (!out) throw std::runtime_error("write_grid: cannot open " + p);
            write_grid_pgm(out, g, c);
        }
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_grid: cannot open " + path);
    write_grid_raw(out, g);
}

Grid read_grid(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_grid: cannot open " + path);
    const int first = in.peek();
    if (first == 'P') return read_grid_pgm(in);
    return read_grid_raw(in);
}

std::string trajectory_csv(const TrajectoryRecord& t) {
    std::ostringstream out;
    out << "step_index,timestep,latent_l2\n";
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
        out << i << ',' << t.entries[i].first << ',' << format_double(l2_norm(t.entries[i].second))
            << '\n';
    }
    return out.str();
}

}  // namespace ssp
