#pragma once

#include <cstdint>
#include <string_view>

namespace ssp {

// PCG32 generator with named streams. The (seed, stream-label) pair fully
// determines the sequence; distinct labels select distinct PCG streams, so
// per-purpose draws ("noise", "variant", "init", ...) never alias.
class SeededRng {
  public:
    SeededRng(std::uint64_t seed, std::string_view stream_label);
    SeededRng(std::uint64_t seed, std::uint64_t stream_id);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi);

    // Standard normal via Box-Muller; the second draw of each pair is cached.
    double normal();
    double normal(double mean, double stddev);

    static std::uint64_t stream_id_for(std::string_view label);

  private:
    std::uint64_t state_ = 0;
    std::uint64_t inc_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace ssp
