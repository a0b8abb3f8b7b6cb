#include "smfkit/simulate.hpp"

#include <stdexcept>

#include "smfkit/rng.hpp"

namespace smfkit::smf {

namespace {

double draw(rng::SplitMix64& gen, const geom::Interval& iv) {
    return gen.uniform(iv.lo(), iv.hi());
}

} // namespace

ScalarTrajectory simulate_scalar(const ScalarSystemModel& model, int horizon,
                                 std::uint64_t seed) {
    if (horizon < 0) {
        throw std::invalid_argument("simulate_scalar: horizon must be non-negative");
    }
    rng::SplitMix64 gen(seed);
    ScalarTrajectory traj;
    double x = draw(gen, model.initial_range);
    double w_prev = 0.0;
    for (int k = 0; k <= horizon; ++k) {
        const double v = draw(gen, model.noise_set_at(k, w_prev));
        traj.states.push_back(x);
        traj.measurements.push_back(model.measurement(x, v));
        if (k < horizon) {
            const double w = draw(gen, model.process_noise_range);
            traj.process_noise.push_back(w);
            x = model.transition(x, w);
            w_prev = w;
        }
    }
    return traj;
}

LinearTrajectory simulate_linear_shared_noise(const LinearModel& model, int horizon,
                                              std::uint64_t seed) {
    model.validate();
    if (model.state_dim() != 2) {
        throw std::invalid_argument("simulate_linear_shared_noise: needs a 2D state");
    }
    rng::SplitMix64 gen(seed);
    LinearTrajectory traj;
    Eigen::Vector2d x(draw(gen, model.initial_range.axis(0)),
                      draw(gen, model.initial_range.axis(1)));
    traj.shared_process_noise = draw(gen, model.process_noise_range);
    const Eigen::Matrix2d a = model.A;
    const Eigen::Vector2d b(model.B(0, 0), model.B(1, 0));
    for (int k = 0; k <= horizon; ++k) {
        const double v = draw(gen, model.measurement_noise_range);
        traj.states.push_back(x);
        traj.measurements.push_back(model.C(0, 0) * x(0) + model.C(0, 1) * x(1) +
                                    model.D(0, 0) * v);
        x = a * x + b * traj.shared_process_noise;
    }
    return traj;
}

ScalarTrajectory simulate_scalar_linear(const LinearModel& model, int horizon,
                                        std::uint64_t seed) {
    model.validate();
    if (model.state_dim() != 1) {
        throw std::invalid_argument("simulate_scalar_linear: needs a 1D state");
    }
    rng::SplitMix64 gen(seed);
    ScalarTrajectory traj;
    double x = draw(gen, model.initial_range.axis(0));
    for (int k = 0; k <= horizon; ++k) {
        const double v = draw(gen, model.measurement_noise_range);
        traj.states.push_back(x);
        traj.measurements.push_back(model.C(0, 0) * x + model.D(0, 0) * v);
        if (k < horizon) {
            const double w = draw(gen, model.process_noise_range);
            traj.process_noise.push_back(w);
            x = model.A(0, 0) * x + model.B(0, 0) * w;
        }
    }
    return traj;
}

} // namespace smfkit::smf
