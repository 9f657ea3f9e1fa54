#include "fmdkit/signal.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fmd {

namespace detail {

double compensated_sum(const std::vector<double>& xs) noexcept {
    CompensatedSum s;
    for (double x : xs) s.add(x);
    return s.value();
}

}  // namespace detail

namespace {

bool all_finite(const std::vector<cplx>& samples) {
    return std::all_of(samples.begin(), samples.end(), [](const cplx& c) {
        return std::isfinite(c.real()) && std::isfinite(c.imag());
    });
}

bool all_real(const std::vector<cplx>& samples) {
    return std::all_of(samples.begin(), samples.end(),
                       [](const cplx& c) { return c.imag() == 0.0; });
}

std::vector<cplx> widen(std::vector<double> xs) {
    std::vector<cplx> out;
    out.reserve(xs.size());
    for (double x : xs) out.emplace_back(x, 0.0);
    return out;
}

}  // namespace

Signal::Signal(Shape shape, std::vector<cplx> samples)
    : shape_(shape), samples_(std::move(samples)) {
    if (shape_.ndim != 1 && shape_.ndim != 2)
        throw std::invalid_argument("Signal: ndim must be 1 or 2");
    if (shape_.rows == 0 || shape_.cols == 0)
        throw std::invalid_argument("Signal: shape dimensions must be positive");
    if (shape_.ndim == 1 && shape_.rows != 1)
        throw std::invalid_argument("Signal: 1D shape must have rows == 1");
    if (samples_.size() != shape_.size())
        throw std::invalid_argument("Signal: sample count " + std::to_string(samples_.size()) +
                                    " does not match shape size " + std::to_string(shape_.size()));
    if (samples_.empty())
        throw std::invalid_argument("Signal: empty signals are not allowed");
    if (!all_finite(samples_))
        throw std::invalid_argument("Signal: samples must be finite (no NaN/Inf)");
    real_ = all_real(samples_);
}

Signal Signal::real_1d(std::vector<double> samples) {
    const std::size_t n = samples.size();
    return Signal({1, 1, n}, widen(std::move(samples)));
}

Signal Signal::real_2d(std::size_t rows, std::size_t cols, std::vector<double> samples) {
    return Signal({2, rows, cols}, widen(std::move(samples)));
}

Signal Signal::complex_1d(std::vector<cplx> samples) {
    const std::size_t n = samples.size();
    return Signal({1, 1, n}, std::move(samples));
}

Signal Signal::complex_2d(std::size_t rows, std::size_t cols, std::vector<cplx> samples) {
    return Signal({2, rows, cols}, std::move(samples));
}

Signal Signal::like(const Signal& base, std::vector<cplx> samples) {
    return Signal(base.shape_, std::move(samples));
}

Signal Signal::zeros_like(const Signal& base) {
    return Signal(base.shape_, std::vector<cplx>(base.size(), cplx{0.0, 0.0}));
}

std::vector<double> Signal::real_samples() const {
    std::vector<double> out;
    out.reserve(samples_.size());
    for (const cplx& c : samples_) out.push_back(c.real());
    return out;
}

double Signal::max_abs() const noexcept {
    double m = 0.0;
    for (const cplx& c : samples_) m = std::max(m, std::abs(c));
    return m;
}

namespace {

void require_same_shape(const Signal& a, const Signal& b, const char* op) {
    if (!a.same_shape(b))
        throw std::invalid_argument(std::string(op) + ": shape mismatch");
}

}  // namespace

Signal operator+(const Signal& a, const Signal& b) {
    require_same_shape(a, b, "operator+");
    std::vector<cplx> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
    return Signal::like(a, std::move(out));
}

Signal operator-(const Signal& a, const Signal& b) {
    require_same_shape(a, b, "operator-");
    std::vector<cplx> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
    return Signal::like(a, std::move(out));
}

Signal operator*(double a, const Signal& x) {
    std::vector<cplx> out(x.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * x[i];
    return Signal::like(x, std::move(out));
}

Signal operator*(cplx a, const Signal& x) {
    std::vector<cplx> out(x.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * x[i];
    return Signal::like(x, std::move(out));
}

cplx inner_product(const Signal& f, const Signal& g) {
    require_same_shape(f, g, "inner_product");
    detail::CompensatedSum re, im;
    const auto& a = f.samples();
    const auto& b = g.samples();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const cplx t = a[i] * std::conj(b[i]);
        re.add(t.real());
        im.add(t.imag());
    }
    return {re.value(), im.value()};
}

double energy(const Signal& f) { return inner_product(f, f).real(); }

double norm(const Signal& f) { return std::sqrt(energy(f)); }

bool orthogonal_at(const Signal& f, const Signal& g, double eps) {
    return std::abs(inner_product(f, g)) <= eps * norm(f) * norm(g);
}

double pee(double total, const std::vector<double>& parts) {
    if (!(total > 0.0) || !std::isfinite(total))
        throw std::invalid_argument("pee: total energy must be positive and finite");
    detail::CompensatedSum s;
    for (double p : parts) {
        if (!(p >= 0.0) || !std::isfinite(p))
            throw std::invalid_argument("pee: component energies must be nonnegative and finite");
        s.add(p);
    }
    return (total - s.value()) / total * 100.0;
}

Signal circular_shift(const Signal& x, long tau) {
    if (x.ndim() != 1)
        throw std::invalid_argument("circular_shift: 1D signals only");
    const long n = static_cast<long>(x.size());
    const long t = ((tau % n) + n) % n;
    std::vector<cplx> out(x.size());
    for (long i = 0; i < n; ++i) out[static_cast<std::size_t>((i + t) % n)] = x[static_cast<std::size_t>(i)];
    return Signal::like(x, std::move(out));
}

}  // namespace fmd
