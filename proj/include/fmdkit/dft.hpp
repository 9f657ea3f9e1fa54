// Discrete Fourier transform pair. Forward is unnormalized; the inverse
// carries the 1/N (or 1/(M*N)) factor. Power-of-two lengths go through a
// radix-2 FFT, everything else through a direct transform; both sides are
// exact inverses of each other up to rounding for any length.
#pragma once

#include "fmdkit/signal.hpp"

namespace fmd {

struct Spectrum {
    Shape shape;             // same as the source signal
    std::vector<cplx> bins;  // row-major
    std::size_t size() const noexcept { return bins.size(); }
};

Spectrum dft_forward(const Signal& x);
Signal dft_inverse(const Spectrum& X);

// sum |X_k|^2, compensated. Parseval: energy(x) == spectrum_energy(X)/size.
double spectrum_energy(const Spectrum& X);

}  // namespace fmd
