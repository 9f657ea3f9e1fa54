// Sample arrays (1D series / 2D images) and the inner-product algebra that
// the decomposition machinery is built on. All values are immutable; all
// operations are pure and thread-safe.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace fmd {

using cplx = std::complex<double>;

// Relative tolerance below which two vectors count as orthogonal:
// |<f,g>| <= eps * |f| * |g|.
inline constexpr double default_orthogonality_eps = 1e-9;

namespace detail {

// Neumaier-compensated accumulator. Energy ledgers sum terms spanning
// several orders of magnitude; plain summation would eat the ~1e-14 %
// error resolution the ledgers report.
class CompensatedSum {
public:
    void add(double v) noexcept {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            carry_ += (sum_ - t) + v;
        else
            carry_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

double compensated_sum(const std::vector<double>& xs) noexcept;

}  // namespace detail

struct Shape {
    int ndim = 1;           // 1 or 2
    std::size_t rows = 1;   // 1 for 1D
    std::size_t cols = 0;   // length for 1D
    std::size_t size() const noexcept { return rows * cols; }
    bool operator==(const Shape&) const = default;
};

class Signal {
public:
    static Signal real_1d(std::vector<double> samples);
    static Signal real_2d(std::size_t rows, std::size_t cols, std::vector<double> samples);
    static Signal complex_1d(std::vector<cplx> samples);
    static Signal complex_2d(std::size_t rows, std::size_t cols, std::vector<cplx> samples);
    // New signal with the shape of `like` and the given samples.
    static Signal like(const Signal& base, std::vector<cplx> samples);
    static Signal zeros_like(const Signal& base);

    int ndim() const noexcept { return shape_.ndim; }
    std::size_t rows() const noexcept { return shape_.rows; }
    std::size_t cols() const noexcept { return shape_.cols; }
    std::size_t size() const noexcept { return samples_.size(); }
    const Shape& shape() const noexcept { return shape_; }
    bool same_shape(const Signal& other) const noexcept { return shape_ == other.shape_; }

    // True when every sample was stored with a zero imaginary part.
    bool is_real() const noexcept { return real_; }

    const std::vector<cplx>& samples() const noexcept { return samples_; }
    cplx operator[](std::size_t i) const noexcept { return samples_[i]; }

    std::vector<double> real_samples() const;
    double max_abs() const noexcept;

private:
    Signal(Shape shape, std::vector<cplx> samples);

    Shape shape_;
    std::vector<cplx> samples_;
    bool real_ = false;
};

Signal operator+(const Signal& a, const Signal& b);
Signal operator-(const Signal& a, const Signal& b);
Signal operator*(double a, const Signal& x);
Signal operator*(cplx a, const Signal& x);

// <f,g> = sum f_i * conj(g_i), compensated accumulation.
cplx inner_product(const Signal& f, const Signal& g);
double norm(const Signal& f);
double energy(const Signal& f);  // == inner_product(f,f).real() exactly

bool orthogonal_at(const Signal& f, const Signal& g, double eps = default_orthogonality_eps);

// Percentage error in energy: (total - sum(parts)) / total * 100.
double pee(double total, const std::vector<double>& parts);

// y[i] = x[(i - tau) mod n]; 1D only, tau may be negative.
Signal circular_shift(const Signal& x, long tau);

struct EnergyLedger {
    double total_energy = 0.0;                // energy of the decomposed input
    std::vector<double> component_energies;
    double pee_percent = 0.0;
};

}  // namespace fmd
