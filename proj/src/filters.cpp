#include "fmdkit/filters.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fmdkit/dft.hpp"

namespace fmd {

namespace {

// distance of bin k from DC on the circle of n bins
std::size_t bin_distance(std::size_t k, std::size_t n) {
    return std::min(k, n - k);
}

void require_response_even_nonnegative(const std::vector<double>& h, const Shape& shape) {
    if (h.size() != shape.size())
        throw std::invalid_argument("apply_zero_phase: response size does not match signal shape");
    for (double v : h) {
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("apply_zero_phase: response must be finite and nonnegative");
    }
    const double tol = 1e-12;
    if (shape.ndim == 1) {
        const std::size_t n = shape.cols;
        for (std::size_t k = 0; k < n; ++k) {
            const double mirror = h[(n - k) % n];
            if (std::abs(h[k] - mirror) > tol * std::max(1.0, std::abs(h[k])))
                throw std::invalid_argument("apply_zero_phase: response breaks even symmetry");
        }
    } else {
        const std::size_t m = shape.rows, n = shape.cols;
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                const double mirror = h[((m - r) % m) * n + (n - c) % n];
                if (std::abs(h[r * n + c] - mirror) > tol * std::max(1.0, std::abs(h[r * n + c])))
                    throw std::invalid_argument("apply_zero_phase: response breaks even symmetry");
            }
        }
    }
}

}  // namespace

std::vector<double> gaussian_response(const Shape& shape, double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("gaussian_response: sigma must be positive");
    const double denom = 2.0 * sigma * sigma;
    // The passband is never exactly zero; keep that true for narrow sigmas
    // whose far tail would underflow.
    const auto bell = [denom](double dist_sq) {
        return std::max(std::exp(-dist_sq / denom), std::numeric_limits<double>::min());
    };
    std::vector<double> h(shape.size());
    if (shape.ndim == 1) {
        const std::size_t n = shape.cols;
        for (std::size_t k = 0; k < n; ++k) {
            const double d = static_cast<double>(bin_distance(k, n));
            h[k] = bell(d * d);
        }
    } else {
        const std::size_t m = shape.rows, n = shape.cols;
        for (std::size_t r = 0; r < m; ++r) {
            const double dr = static_cast<double>(bin_distance(r, m));
            for (std::size_t c = 0; c < n; ++c) {
                const double dc = static_cast<double>(bin_distance(c, n));
                h[r * n + c] = bell(dr * dr + dc * dc);
            }
        }
    }
    return h;
}

std::vector<double> ideal_response(const Shape& shape, double cutoff) {
    if (!(cutoff >= 0.0 && cutoff <= 0.5))
        throw std::invalid_argument("ideal_response: cutoff must lie in [0, 0.5]");
    std::vector<double> h(shape.size());
    if (shape.ndim == 1) {
        const std::size_t n = shape.cols;
        for (std::size_t k = 0; k < n; ++k) {
            const double f = static_cast<double>(bin_distance(k, n)) / static_cast<double>(n);
            h[k] = (f <= cutoff) ? 1.0 : 0.0;
        }
    } else {
        const std::size_t m = shape.rows, n = shape.cols;
        for (std::size_t r = 0; r < m; ++r) {
            const double fr = static_cast<double>(bin_distance(r, m)) / static_cast<double>(m);
            for (std::size_t c = 0; c < n; ++c) {
                const double fc = static_cast<double>(bin_distance(c, n)) / static_cast<double>(n);
                h[r * n + c] = (std::max(fr, fc) <= cutoff) ? 1.0 : 0.0;
            }
        }
    }
    return h;
}

Signal apply_zero_phase(const Signal& x, const std::vector<double>& response) {
    if (!x.is_real())
        throw std::invalid_argument("apply_zero_phase: input signal must be real");
    require_response_even_nonnegative(response, x.shape());

    Spectrum X = dft_forward(x);
    for (std::size_t k = 0; k < X.bins.size(); ++k) X.bins[k] *= response[k];
    const Signal y = dft_inverse(X);

    const double imag_tol = 1e-10 * std::max(1.0, x.max_abs());
    std::vector<double> out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (std::abs(y[i].imag()) > imag_tol)
            throw std::runtime_error("apply_zero_phase: output has an imaginary residue above tolerance");
        out[i] = y[i].real();
    }
    if (x.ndim() == 1) return Signal::real_1d(std::move(out));
    return Signal::real_2d(x.rows(), x.cols(), std::move(out));
}

Signal moving_average(const Signal& x, std::size_t window) {
    if (x.ndim() != 1)
        throw std::invalid_argument("moving_average: 1D signals only");
    const std::size_t n = x.size();
    if (window % 2 == 0 || window < 1 || window > n)
        throw std::invalid_argument("moving_average: window must be odd and within [1, n]");
    const long half = static_cast<long>((window - 1) / 2);
    const double inv = 1.0 / static_cast<double>(window);
    std::vector<cplx> out(n);
    const long ln = static_cast<long>(n);
    for (long i = 0; i < ln; ++i) {
        cplx acc{0.0, 0.0};
        for (long j = -half; j <= half; ++j) acc += x[static_cast<std::size_t>(((i + j) % ln + ln) % ln)];
        out[static_cast<std::size_t>(i)] = acc * inv;
    }
    return Signal::like(x, std::move(out));
}

FilterSpec::FilterSpec(FilterKind kind, std::vector<double> schedule)
    : kind_(kind), schedule_(std::move(schedule)) {
    if (schedule_.empty())
        throw std::invalid_argument("FilterSpec: schedule must have at least one stage");
}

FilterSpec FilterSpec::gaussian(std::vector<double> sigmas) {
    for (double s : sigmas)
        if (!(s > 0.0) || !std::isfinite(s))
            throw std::invalid_argument("FilterSpec: gaussian sigmas must be positive");
    return FilterSpec(FilterKind::gaussian_lowpass, std::move(sigmas));
}

FilterSpec FilterSpec::gaussian_halving(std::size_t stages, double sigma0) {
    if (stages < 1) throw std::invalid_argument("FilterSpec: stage count must be >= 1");
    std::vector<double> sigmas;
    sigmas.reserve(stages);
    double s = sigma0;
    for (std::size_t i = 0; i < stages; ++i, s /= 2.0) sigmas.push_back(s);
    return gaussian(std::move(sigmas));
}

FilterSpec FilterSpec::ideal(std::vector<double> cutoffs) {
    for (double c : cutoffs)
        if (!(c >= 0.0 && c <= 0.5))
            throw std::invalid_argument("FilterSpec: ideal cutoffs must lie in [0, 0.5]");
    if (cutoffs.size() > 1) {
        const bool dec = cutoffs[1] < cutoffs[0];
        for (std::size_t i = 1; i < cutoffs.size(); ++i) {
            const bool step_dec = cutoffs[i] < cutoffs[i - 1];
            if (cutoffs[i] == cutoffs[i - 1] || step_dec != dec)
                throw std::invalid_argument("FilterSpec: ideal cutoffs must be strictly monotone");
        }
    }
    return FilterSpec(FilterKind::ideal_lowpass, std::move(cutoffs));
}

FilterSpec FilterSpec::moving_average(std::vector<std::size_t> windows) {
    std::vector<double> sched;
    sched.reserve(windows.size());
    for (std::size_t w : windows) {
        if (w % 2 == 0 || w < 1)
            throw std::invalid_argument("FilterSpec: moving-average windows must be odd and >= 1");
        sched.push_back(static_cast<double>(w));
    }
    return FilterSpec(FilterKind::moving_average, std::move(sched));
}

Signal FilterSpec::apply_stage(const Signal& x, std::size_t stage) const {
    if (stage >= schedule_.size())
        throw std::invalid_argument("FilterSpec: stage index out of range");
    switch (kind_) {
        case FilterKind::gaussian_lowpass:
            return apply_zero_phase(x, gaussian_response(x.shape(), schedule_[stage]));
        case FilterKind::ideal_lowpass:
            return apply_zero_phase(x, ideal_response(x.shape(), schedule_[stage]));
        case FilterKind::moving_average:
            return fmd::moving_average(x, static_cast<std::size_t>(schedule_[stage]));
    }
    throw std::logic_error("FilterSpec: unknown kind");
}

std::string FilterSpec::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case FilterKind::gaussian_lowpass: os << "gaussian(sigma=["; break;
        case FilterKind::ideal_lowpass: os << "ideal(cutoff=["; break;
        case FilterKind::moving_average: os << "movavg(window=["; break;
    }
    for (std::size_t i = 0; i < schedule_.size(); ++i) {
        if (i) os << ",";
        os << schedule_[i];
    }
    os << "])";
    return os.str();
}

double default_sigma0(const Shape& shape) {
    return static_cast<double>(std::max(shape.rows, shape.cols)) / 8.0;
}

}  // namespace fmd
