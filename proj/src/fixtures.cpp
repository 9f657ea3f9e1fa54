#include "fmdkit/fixtures.hpp"

#include <cmath>
#include <numbers>

namespace fmd::fixtures {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Signal tone(std::size_t n, double cycles, double amplitude) {
    std::vector<double> x(n);
    const double w = 2.0 * std::numbers::pi * cycles / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = amplitude * std::sin(w * static_cast<double>(i));
    return Signal::real_1d(std::move(x));
}

std::pair<Signal, Signal> twotone_pair(std::size_t n) {
    return {tone(n, 5.0), tone(n, 50.0)};
}

Signal twotone(std::size_t n) {
    auto [a, b] = twotone_pair(n);
    return a + b;
}

std::vector<Signal> multitone_components(std::size_t n) {
    std::vector<Signal> xs;
    xs.reserve(20);
    for (int l = 1; l <= 20; ++l)
        xs.push_back(tone(n, static_cast<double>(l), static_cast<double>(21 - l)));
    return xs;
}

Signal multitone(std::size_t n) {
    const std::vector<Signal> xs = multitone_components(n);
    Signal sum = xs[0];
    for (std::size_t i = 1; i < xs.size(); ++i) sum = sum + xs[i];
    return sum;
}

Signal random_uniform_1d(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> x(n);
    for (double& v : x) v = 2.0 * uniform01(rng) - 1.0;
    return Signal::real_1d(std::move(x));
}

Signal random_image(std::size_t rows, std::size_t cols, std::uint64_t seed, int maxval) {
    std::mt19937_64 rng(seed);
    std::vector<double> x(rows * cols);
    for (double& v : x) {
        auto p = static_cast<int>(uniform01(rng) * (maxval + 1));
        v = static_cast<double>(std::min(p, maxval));
    }
    return Signal::real_2d(rows, cols, std::move(x));
}

}  // namespace fmd::fixtures
