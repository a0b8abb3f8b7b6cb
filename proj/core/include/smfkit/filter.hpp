#ifndef SMFKIT_FILTER_HPP
#define SMFKIT_FILTER_HPP

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "smfkit/mc_oracle.hpp"
#include "smfkit/polytope.hpp"
#include "smfkit/system_models.hpp"

namespace smfkit::smf {

enum class Engine {
    Classical,     // set-image prediction, intersection update
    OptimalMc,     // combined predict+update with conditional noise, sampled
    PbProjection,  // augmented-state polytope filter, projected posteriors
};

const char* engine_name(Engine e);

using StateSet = std::variant<geom::Interval, geom::PolygonV>;

bool state_set_is_empty(const StateSet& s);
double state_set_diameter(const StateSet& s);
double state_set_area(const StateSet& s); // 0 for intervals

struct TraceStep {
    int k = 0;
    StateSet prior;
    StateSet posterior;
    double y = 0.0;
};

struct FilterTrace {
    Engine engine = Engine::Classical;
    std::vector<TraceStep> steps;
    // Step at which the posterior became EMPTY (measurement inconsistent
    // with the model); the trace stops there.
    std::optional<int> inconsistent_at;

    bool consistent() const { return !inconsistent_at.has_value(); }
};

// --- scalar nonlinear engines ----------------------------------------------

// Prior range: exact image of the posterior and the process-noise range
// under the transition.
geom::Interval classical_predict(const geom::Interval& posterior,
                                 const ScalarSystemModel& model);

// Posterior range: measurement preimage under the marginal noise range,
// intersected with the prior. EMPTY signals an inconsistent measurement.
geom::Interval classical_update(const geom::Interval& prior, double y,
                                const ScalarSystemModel& model);

// Combined predict+update against the conditional noise range, realized by
// the sampling oracle. Requires a model with related noise (otherwise it
// reduces to the classical semantics, up to sampling slack).
geom::Interval optimal_step_related(const geom::Interval& posterior_prev, double y,
                                    const ScalarSystemModel& model,
                                    const oracle::McConfig& cfg);

// Deterministic grid-sweep realization of the same step.
geom::Interval optimal_step_related_grid(const geom::Interval& posterior_prev, double y,
                                         const ScalarSystemModel& model, double resolution);

// --- linear engines ---------------------------------------------------------

// A * posterior (+) B * wRange.
geom::PolygonV classical_predict(const geom::PolygonV& posterior, const LinearModel& model);
// Measurement strip {x : y = Cx + Dv, v in vRange} clipped against the prior.
geom::PolygonV classical_update(const geom::PolygonV& prior, double y, const LinearModel& model);

// Scalar specializations (state dimension 1).
geom::Interval classical_predict(const geom::Interval& posterior, const LinearModel& model);
geom::Interval classical_update(const geom::Interval& prior, double y, const LinearModel& model);

// One step of the projection-based filter on the augmented model: append
// the measurement slab |y - C_bar A_bar^k z0| <= |D| v_max to the running
// constraint set over the initial augmented state, then return the updated
// constraints and the step-k posterior projected to the (x1, x2) plane.
struct PbStepResult {
    geom::PolytopeH constraints;
    geom::PolygonV posterior;
};

PbStepResult pb_filter_step(const geom::PolytopeH& constraints, double y, int k,
                            const AugmentedModel& model);

// --- run loops ---------------------------------------------------------------

// Classical or sampled-optimal run over a scalar model. `mc` is required
// for Engine::OptimalMc and ignored otherwise; the per-step sampling seed
// is derived from mc->seed and the step index.
FilterTrace run_filter(const ScalarSystemModel& model, std::span<const double> measurements,
                       Engine engine, const oracle::McConfig* mc = nullptr);

// Classical linear run (intervals for 1D state, polygons for 2D).
FilterTrace run_filter(const LinearModel& model, std::span<const double> measurements);

// Projection-based run on the augmented model.
FilterTrace run_filter(const AugmentedModel& model, std::span<const double> measurements);

// True iff the optimal set lies inside the classical one within tol.
bool outer_bound_assert(const StateSet& optimal, const StateSet& classical, double tol);

} // namespace smfkit::smf

#endif
