// Discrete spiral of Theodorus: unit steps, each perpendicular to the
// current radius vector, so |T_l| = sqrt(l) for every vertex. The 2D
// construction follows the classical angle recurrence; the 3D variant tilts
// the step direction out of the starting plane once and then keeps the
// out-of-plane step component constant, which makes the polar angle of the
// vertices change monotonically from then on. The N-D generator steers with
// projections onto the orthogonal complement of the current radius.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fmd {

struct SpiralPath {
    std::size_t dim = 2;
    std::vector<std::vector<double>> vertices;  // T_0..T_L, T_0 = origin
    std::vector<std::vector<double>> steps;     // x_1..x_L, unit vectors
    std::vector<double> angles;                 // 2D only: Phi_1..Phi_L, Phi_1 = 0
    std::vector<std::string> warnings;

    std::size_t step_count() const noexcept { return steps.size(); }
};

SpiralPath theodorus_2d(std::size_t steps);

// tilt < 0: the angle between the +z axis and T_l decreases after the tilt;
// tilt > 0: it increases. The tilt applies when leaving vertex T_tilt_step,
// i.e. x_{tilt_step+1} is the first out-of-plane step.
SpiralPath theodorus_3d(std::size_t steps, double tilt, std::size_t tilt_step = 18);

enum class Steering { canonical, random_seeded };

SpiralPath theodorus_nd(std::size_t steps, std::size_t dim, Steering rule = Steering::canonical,
                        std::uint64_t seed = 0);

}  // namespace fmd
