#pragma once

// Seeded synthetic masks for verification and benchmarking. Each cell is
// active independently with probability p. The raw mt19937_64 stream is
// mapped to [0,1) by hand so results are bit-identical across standard
// library implementations; any failure can be replayed from its seed.

#include <cstdint>
#include <random>

#include "tricubo/field.hpp"

namespace tricubo {

namespace detail {

class UniformBits {
public:
  explicit UniformBits(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
  std::mt19937_64 engine_;
};

}  // namespace detail

inline BinaryField random_mask(std::int64_t n_cells, double p, std::uint64_t seed) {
  detail::UniformBits bits(seed);
  BinaryField mask(n_cells);
  for (CellId c = 0; c < n_cells; ++c) mask.set(c, bits.next() < p);
  return mask;
}

inline MultiLevelBinaryField random_mask(std::int32_t nlev, std::int64_t n_cells, double p,
                                         std::uint64_t seed) {
  detail::UniformBits bits(seed);
  MultiLevelBinaryField mask(nlev, n_cells);
  for (std::int32_t lev = 0; lev < nlev; ++lev)
    for (CellId c = 0; c < n_cells; ++c) mask.set(lev, c, bits.next() < p);
  return mask;
}

// Uniform synthetic scalar field in [0, 100), the value range of a cloud
// cover percentage.
inline Field2D random_field(std::int64_t n_cells, std::uint64_t seed) {
  detail::UniformBits bits(seed);
  std::vector<double> values(n_cells);
  for (auto& v : values) v = 100.0 * bits.next();
  return Field2D(std::move(values));
}

}  // namespace tricubo
