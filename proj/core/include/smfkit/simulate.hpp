#ifndef SMFKIT_SIMULATE_HPP
#define SMFKIT_SIMULATE_HPP

#include <cstdint>
#include <vector>

#include "smfkit/polygon.hpp"
#include "smfkit/system_models.hpp"

namespace smfkit::smf {

// Ground-truth trajectory draws. All uncertain quantities are sampled
// uniformly over their (conditional) ranges from one splitmix stream, in a
// fixed order, so a seed pins the whole trajectory.

struct ScalarTrajectory {
    std::vector<double> states;       // x_0 .. x_K
    std::vector<double> measurements; // y_0 .. y_K
    std::vector<double> process_noise; // w_0 .. w_{K-1} (w_k drawn after y_k)
};

// Draws x0 ~ U(initial), then per step: v_k from the conditional range
// given the previous process noise (marginal at k = 0), y_k = g(x_k, v_k),
// w_k ~ U(wRange), x_{k+1} = f(x_k, w_k).
ScalarTrajectory simulate_scalar(const ScalarSystemModel& model, int horizon,
                                 std::uint64_t seed);

struct LinearTrajectory {
    std::vector<geom::Vec2> states;   // x_0 .. x_K
    std::vector<double> measurements; // y_0 .. y_K
    double shared_process_noise = 0.0;
};

// The identical-process-noise regime: w is drawn once and reused at every
// step; measurement noises are fresh. Requires a 2D state.
LinearTrajectory simulate_linear_shared_noise(const LinearModel& model, int horizon,
                                              std::uint64_t seed);

// Fresh process noise every step, scalar state.
ScalarTrajectory simulate_scalar_linear(const LinearModel& model, int horizon,
                                        std::uint64_t seed);

} // namespace smfkit::smf

#endif
