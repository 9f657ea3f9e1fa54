#include "fmdkit/spiral.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace fmd {

namespace {

constexpr double pi = std::numbers::pi;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double vnorm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

std::vector<double> add(std::vector<double> a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

}  // namespace

SpiralPath theodorus_2d(std::size_t steps) {
    if (steps < 1) throw std::invalid_argument("theodorus_2d: need at least one step");
    SpiralPath p;
    p.dim = 2;
    p.vertices.reserve(steps + 1);
    p.steps.reserve(steps);
    p.angles.reserve(steps);
    p.vertices.push_back({0.0, 0.0});

    double phi = 0.0;  // Phi_1
    std::vector<double> t = {0.0, 0.0};
    for (std::size_t s = 1; s <= steps; ++s) {
        std::vector<double> step;
        if (s == 1) {
            step = {1.0, 0.0};
        } else {
            // phi currently holds Phi_{s-1}; the new step is the unit
            // normal of T_{s-1} on the side that continues the turning.
            step = {-std::sin(phi), std::cos(phi)};
            phi += std::atan(1.0 / std::sqrt(static_cast<double>(s - 1)));
        }
        p.angles.push_back(s == 1 ? 0.0 : phi);
        t = add(std::move(t), step);
        p.vertices.push_back(t);
        p.steps.push_back(std::move(step));
    }
    return p;
}

namespace {

SpiralPath embed_2d_in_3d(SpiralPath flat) {
    SpiralPath p;
    p.dim = 3;
    p.angles = std::move(flat.angles);
    p.warnings = std::move(flat.warnings);
    for (auto& v : flat.vertices) p.vertices.push_back({v[0], v[1], 0.0});
    for (auto& s : flat.steps) p.steps.push_back({s[0], s[1], 0.0});
    return p;
}

}  // namespace

SpiralPath theodorus_3d(std::size_t steps, double tilt, std::size_t tilt_step) {
    if (steps < 1) throw std::invalid_argument("theodorus_3d: need at least one step");
    if (std::abs(tilt) >= pi / 2.0)
        throw std::invalid_argument("theodorus_3d: |tilt| must be below pi/2");
    if (tilt == 0.0) return embed_2d_in_3d(theodorus_2d(steps));
    if (tilt_step >= steps) {
        SpiralPath p = embed_2d_in_3d(theodorus_2d(steps));
        p.warnings.push_back("tilt step beyond the last step; spiral stays planar");
        return p;
    }

    // Planar phase, embedded.
    SpiralPath p = embed_2d_in_3d(theodorus_2d(tilt_step));
    p.angles.clear();  // angles are kept for plain 2D paths only

    // Every step from here on keeps the same out-of-plane component s_z,
    // so the z coordinate of T_l grows linearly while |T_l| grows like
    // sqrt(l): the polar angle moves monotonically.
    const double s_z = -std::sin(tilt);
    const double planar_sq = 1.0 - s_z * s_z;
    std::vector<double> t = p.vertices.back();
    for (std::size_t s = tilt_step + 1; s <= steps; ++s) {
        const double txy = std::hypot(t[0], t[1]);
        if (txy < 1e-12)
            throw std::runtime_error("theodorus_3d: degenerate steering, radius has no in-plane part");
        const double tx = t[0] / txy, ty = t[1] / txy;
        // Solve <step, T> = 0 with step = a*t_hat + b*n_hat + s_z*e_z.
        const double a = -s_z * t[2] / txy;
        const double b_sq = planar_sq - a * a;
        if (b_sq <= 0.0)
            throw std::runtime_error("theodorus_3d: degenerate steering, tilt too large for this length");
        const double b = std::sqrt(b_sq);
        const std::vector<double> step = {a * tx - b * ty, a * ty + b * tx, s_z};
        t = add(std::move(t), step);
        p.vertices.push_back(t);
        p.steps.push_back(step);
    }
    return p;
}

namespace {

// uniform in [0,1) from the high 53 bits, independent of library
// distribution implementations
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> random_direction(std::mt19937_64& rng, std::size_t dim) {
    std::vector<double> v(dim);
    for (int attempt = 0; attempt < 64; ++attempt) {
        for (double& c : v) c = 2.0 * uniform01(rng) - 1.0;
        const double n = vnorm(v);
        if (n > 0.1) {
            for (double& c : v) c /= n;
            return v;
        }
    }
    throw std::runtime_error("theodorus_nd: random direction generation failed");
}

// candidate minus its projection onto t, normalized; empty when degenerate
bool project_out(const std::vector<double>& candidate, const std::vector<double>& t,
                 std::vector<double>& out) {
    const double tt = dot(t, t);
    const double coef = dot(candidate, t) / tt;
    out = candidate;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= coef * t[i];
    const double n = vnorm(out);
    if (n < 1e-12) return false;
    for (double& c : out) c /= n;
    return true;
}

}  // namespace

SpiralPath theodorus_nd(std::size_t steps, std::size_t dim, Steering rule, std::uint64_t seed) {
    if (dim < 2) throw std::invalid_argument("theodorus_nd: dimension must be >= 2");
    if (steps < 1) throw std::invalid_argument("theodorus_nd: need at least one step");

    std::mt19937_64 rng(seed);
    SpiralPath p;
    p.dim = dim;
    p.vertices.push_back(std::vector<double>(dim, 0.0));

    std::vector<double> first(dim, 0.0);
    if (rule == Steering::canonical)
        first[0] = 1.0;
    else
        first = random_direction(rng, dim);
    p.steps.push_back(first);
    p.vertices.push_back(first);

    std::vector<double> t = first;
    for (std::size_t s = 2; s <= steps; ++s) {
        std::vector<double> step;
        bool found = false;
        if (rule == Steering::canonical) {
            found = project_out(p.steps.back(), t, step);
        } else {
            for (int attempt = 0; attempt < 16 && !found; ++attempt)
                found = project_out(random_direction(rng, dim), t, step);
        }
        if (!found) {
            // fall back to the first coordinate axis with a usable
            // projection; only fails if the complement is empty
            std::vector<double> axis(dim, 0.0);
            for (std::size_t j = 0; j < dim && !found; ++j) {
                axis.assign(dim, 0.0);
                axis[j] = 1.0;
                found = project_out(axis, t, step);
            }
        }
        if (!found) throw std::runtime_error("theodorus_nd: degenerate steering");
        t = add(std::move(t), step);
        p.vertices.push_back(t);
        p.steps.push_back(std::move(step));
    }
    return p;
}

}  // namespace fmd
