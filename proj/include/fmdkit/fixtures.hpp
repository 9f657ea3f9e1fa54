// Deterministic test fixtures. All randomness comes from std::mt19937_64
// seeded explicitly; uniforms are built from the high 53 bits of the raw
// output ((x >> 11) * 2^-53), so the generated values are identical across
// platforms and standard libraries.
#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "fmdkit/signal.hpp"

namespace fmd::fixtures {

double uniform01(std::mt19937_64& rng);

// sin(2*pi*cycles*i/n), i = 0..n-1
Signal tone(std::size_t n, double cycles, double amplitude = 1.0);

// sin(2*pi*5t) and sin(2*pi*50t) on n samples over [0,1)
std::pair<Signal, Signal> twotone_pair(std::size_t n = 1024);
Signal twotone(std::size_t n = 1024);

// x_l(t) = (21-l) sin(2*pi*l*t) for l = 1..20
std::vector<Signal> multitone_components(std::size_t n = 1024);
Signal multitone(std::size_t n = 1024);

Signal random_uniform_1d(std::size_t n, std::uint64_t seed);  // samples in [-1, 1)

// integer pixel values in 0..maxval
Signal random_image(std::size_t rows, std::size_t cols, std::uint64_t seed, int maxval = 255);

}  // namespace fmd::fixtures
