#include "fmdkit/dft.hpp"

#include <numbers>
#include <utility>

namespace fmd {

namespace {

constexpr double pi = std::numbers::pi;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2, in place. Twiddles come from fresh cos/sin per butterfly
// group instead of a multiplicative recurrence; the extra trig is cheap at
// the sizes this library targets and keeps rounding flat.
void fft_radix2(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * pi / static_cast<double>(len);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const double a_k = ang * static_cast<double>(k);
                const cplx w(std::cos(a_k), std::sin(a_k));
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

std::vector<cplx> dft_direct(const std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    const double base = (inverse ? 2.0 : -2.0) * pi / static_cast<double>(n);
    std::vector<cplx> w(n);
    for (std::size_t m = 0; m < n; ++m)
        w[m] = cplx(std::cos(base * static_cast<double>(m)), std::sin(base * static_cast<double>(m)));
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) acc += a[i] * w[(i * k) % n];
        out[k] = acc;
    }
    return out;
}

void transform_1d(std::vector<cplx>& a, bool inverse) {
    if (a.size() == 1) return;
    if (is_pow2(a.size()))
        fft_radix2(a, inverse);
    else
        a = dft_direct(a, inverse);
}

void transform_rows(std::vector<cplx>& data, std::size_t rows, std::size_t cols, bool inverse) {
    std::vector<cplx> buf(cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) buf[c] = data[r * cols + c];
        transform_1d(buf, inverse);
        for (std::size_t c = 0; c < cols; ++c) data[r * cols + c] = buf[c];
    }
}

void transform_cols(std::vector<cplx>& data, std::size_t rows, std::size_t cols, bool inverse) {
    std::vector<cplx> buf(rows);
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < rows; ++r) buf[r] = data[r * cols + c];
        transform_1d(buf, inverse);
        for (std::size_t r = 0; r < rows; ++r) data[r * cols + c] = buf[r];
    }
}

void transform(std::vector<cplx>& data, const Shape& shape, bool inverse) {
    if (shape.ndim == 1) {
        transform_1d(data, inverse);
    } else {
        transform_rows(data, shape.rows, shape.cols, inverse);
        transform_cols(data, shape.rows, shape.cols, inverse);
    }
}

}  // namespace

Spectrum dft_forward(const Signal& x) {
    std::vector<cplx> bins = x.samples();
    transform(bins, x.shape(), /*inverse=*/false);
    return Spectrum{x.shape(), std::move(bins)};
}

Signal dft_inverse(const Spectrum& X) {
    if (X.bins.size() != X.shape.size())
        throw std::invalid_argument("dft_inverse: bin count does not match shape");
    std::vector<cplx> data = X.bins;
    transform(data, X.shape, /*inverse=*/true);
    const double scale = 1.0 / static_cast<double>(X.shape.size());
    for (cplx& c : data) c *= scale;
    if (X.shape.ndim == 1) return Signal::complex_1d(std::move(data));
    return Signal::complex_2d(X.shape.rows, X.shape.cols, std::move(data));
}

double spectrum_energy(const Spectrum& X) {
    detail::CompensatedSum s;
    for (const cplx& b : X.bins) s.add(b.real() * b.real() + b.imag() * b.imag());
    return s.value();
}

}  // namespace fmd
