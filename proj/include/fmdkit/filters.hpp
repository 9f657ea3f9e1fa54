// Zero-phase filters applied by DFT-domain multiplication with a real,
// even, nonnegative frequency response, plus a time-domain circular moving
// average. Filtering is circular by construction, so shift invariance means
// circular shifts throughout.
#pragma once

#include <functional>
#include <string>

#include "fmdkit/signal.hpp"

namespace fmd {

enum class FilterKind { gaussian_lowpass, ideal_lowpass, moving_average };

// H[k] = exp(-D(k)^2 / (2 sigma^2)) with D(k) the wrap-around distance of
// bin k from DC (2D: Euclidean over wrapped row/column offsets). H[0] = 1.
std::vector<double> gaussian_response(const Shape& shape, double sigma);

// Brick wall: H[k] = 1 where the normalized bin frequency is <= cutoff,
// else 0. cutoff in [0, 0.5]. 2D uses the per-axis maximum frequency, so
// cutoff 0.5 is all-pass in any dimension and the Nyquist bin lands in the
// passband on ties.
std::vector<double> ideal_response(const Shape& shape, double cutoff);

// y = idft(response .* dft(x)). response must be real, nonnegative, and
// even under frequency negation; x must be real. The imaginary residue of
// the output is checked against 1e-10 * max(1, max|x|) and discarded.
Signal apply_zero_phase(const Signal& x, const std::vector<double>& response);

// Circular centered moving average, odd window, 1D only.
Signal moving_average(const Signal& x, std::size_t window);

// A filter kind plus its per-stage parameter schedule (sigma per stage for
// gaussian, cutoff per stage for ideal, window length per stage for the
// moving average).
class FilterSpec {
public:
    static FilterSpec gaussian(std::vector<double> sigmas);
    // sigma_1 = sigma0, halving each stage.
    static FilterSpec gaussian_halving(std::size_t stages, double sigma0);
    static FilterSpec ideal(std::vector<double> cutoffs);
    static FilterSpec moving_average(std::vector<std::size_t> windows);

    FilterKind kind() const noexcept { return kind_; }
    std::size_t stages() const noexcept { return schedule_.size(); }
    const std::vector<double>& schedule() const noexcept { return schedule_; }

    Signal apply_stage(const Signal& x, std::size_t stage) const;

    std::string describe() const;

private:
    FilterSpec(FilterKind kind, std::vector<double> schedule);
    FilterKind kind_;
    std::vector<double> schedule_;
};

// Conventional starting sigma for a halving schedule: max dimension / 8.
double default_sigma0(const Shape& shape);

}  // namespace fmd
