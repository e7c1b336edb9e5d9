#pragma once

#include <iosfwd>
#include <string>

#include "ssp/ddim.hpp"
#include "ssp/grid.hpp"

namespace ssp {

// Raw grid format: magic "SSPG", three little-endian u32 dims (height, width,
// channels), then height*width*channels little-endian f64 values. Lossless for
// every finite input.
void write_grid_raw(std::ostream& out, const Grid& g);
Grid read_grid_raw(std::istream& in);

// 16-bit big-endian P5 graymap of one channel. The original value range is
// recorded in a "# range <min> <max>" header comment; values are mapped
// affinely onto [0, 65535], so a write/read/write cycle is byte-identical.
void write_grid_pgm(std::ostream& out, const Grid& g, int channel);
Grid read_grid_pgm(std::istream& in);

// Path-level helpers. ".pgm" selects the graymap format; multi-channel grids
// fan out into "<stem>_c<k>.pgm". Everything else is written raw. Reading
// sniffs the leading magic.
void write_grid(const std::string& path, const Grid& g);
Grid read_grid(const std::string& path);

// One row per recorded step: step index, training timestep, latent L2 norm.
std::string trajectory_csv(const TrajectoryRecord& t);

// Deterministic double formatting used in every CSV and manifest (%.17g).
std::string format_double(double v);

}  // namespace ssp
