#pragma once

#include <cstdint>
#include <vector>

#include "gsfc/types.hpp"

namespace gsfc::io {

// Seed-deterministic synthetic workload: positions uniform in [-10,10]^3,
// rotations uniform on the 4D unit sphere, scales log-uniform in [0.01, 1],
// SH coefficients normal(0, 0.5) with the degree-0 terms shifted +0.5, and
// opacity uniform in (0, 1]. The ranges keep every Gaussian in front of the
// default camera and numerically well conditioned.
std::vector<Gaussian> generate(std::int64_t count, std::uint64_t seed);

}  // namespace gsfc::io
