#ifndef SMFKIT_MC_ORACLE_HPP
#define SMFKIT_MC_ORACLE_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "smfkit/interval.hpp"
#include "smfkit/system_models.hpp"

namespace smfkit::oracle {

struct McConfig {
    int samples = 10000;
    std::uint64_t seed = 0;
    // Attempt budget is max_attempts_multiplier * samples.
    int max_attempts_multiplier = 1000;
    bool collect_samples = false;
};

struct AcceptedSample {
    double x; // accepted next state
    double w; // process-noise draw that produced it
    double v; // measurement noise implied by (x, y)
};

struct McStepResult {
    geom::Interval hull;
    std::uint64_t attempts = 0;
    std::uint64_t accepted = 0;
    std::vector<AcceptedSample> samples; // filled when collect_samples
};

// Raised when the acceptance region is too small for the attempt budget.
class AcceptanceStarvation : public std::runtime_error {
public:
    AcceptanceStarvation(std::uint64_t attempts, std::uint64_t accepted);
    std::uint64_t attempts;
    std::uint64_t accepted;
    double acceptance_rate;
};

// One combined predict+update step of the sampled optimal filter:
// draw x_{k-1} ~ U(prev) and w_{k-1} ~ U(wRange), push through the
// transition, and accept when the implied measurement noise lies in the
// conditional range for the drawn w (marginal range when the model has no
// relatedness, or at k = 0 semantics -- the caller passes k >= 1 steps).
// Returns the interval hull of the first `samples` accepted states.
McStepResult mc_posterior_step(const geom::Interval& prev, double y, const McConfig& cfg,
                               const smf::ScalarSystemModel& model);

// Deterministic variant sweeping inclusive grids over prev and the noise
// range instead of sampling; same acceptance rule.
geom::Interval grid_sweep_posterior_step(const geom::Interval& prev, double y,
                                         double resolution,
                                         const smf::ScalarSystemModel& model);

} // namespace smfkit::oracle

#endif
