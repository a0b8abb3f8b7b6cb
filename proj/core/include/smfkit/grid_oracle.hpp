#ifndef SMFKIT_GRID_ORACLE_HPP
#define SMFKIT_GRID_ORACLE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "smfkit/interval.hpp"
#include "smfkit/system_models.hpp"

namespace smfkit::oracle {

enum class NoiseMode {
    // Measurement acceptance against the marginal noise range; the
    // accepting set then coincides with the classical filter's posterior.
    Marginal,
    // Acceptance against the conditional range of the propagated process
    // noise; the accepting set is the optimal posterior.
    Conditional,
};

struct GridSpec {
    double resolution = 1e-3;   // per dimension (state and process noise)
    double accept_tol = 1e-6;   // relative inflation of the noise set at the match test
    NoiseMode noise_mode = NoiseMode::Marginal;
    std::uint64_t budget = 100'000'000; // evaluated tuples before giving up
};

struct GridPosterior {
    std::vector<geom::Interval> hulls; // per step, horizon = measurements - 1
    std::uint64_t evaluated = 0;
};

class GridBudgetExceeded : public std::runtime_error {
public:
    GridBudgetExceeded(std::uint64_t budget, double suggested_resolution);
    double suggested_resolution;
};

// Brute-force posterior enumeration over inclusive grids of the initial
// state and every process-noise draw. Tuples are walked recursively: the
// survivors of the step-k measurement test form the frontier for step
// k+1, tracked per state cell with exact min/max representatives so the
// hull error stays within one cell. Measurement matching inflates the
// noise set by accept_tol (relative).
GridPosterior grid_posterior(const smf::ScalarSystemModel& model,
                             std::span<const double> measurements, const GridSpec& spec);

} // namespace smfkit::oracle

#endif
