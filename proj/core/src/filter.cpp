#include "smfkit/filter.hpp"

#include <cmath>
#include <stdexcept>

#include "smfkit/rng.hpp"

namespace smfkit::smf {

const char* engine_name(Engine e) {
    switch (e) {
    case Engine::Classical:
        return "classical";
    case Engine::OptimalMc:
        return "optimal";
    case Engine::PbProjection:
        return "pb";
    }
    return "unknown";
}

bool state_set_is_empty(const StateSet& s) {
    return std::visit([](const auto& v) { return v.is_empty(); }, s);
}

double state_set_diameter(const StateSet& s) {
    if (const auto* iv = std::get_if<geom::Interval>(&s)) {
        return iv->diameter();
    }
    return geom::diameter(std::get<geom::PolygonV>(s));
}

double state_set_area(const StateSet& s) {
    if (const auto* p = std::get_if<geom::PolygonV>(&s)) {
        return geom::area(*p);
    }
    return 0.0;
}

geom::Interval classical_predict(const geom::Interval& posterior,
                                 const ScalarSystemModel& model) {
    if (posterior.is_empty()) {
        throw std::invalid_argument("classical_predict: empty posterior");
    }
    return model.transition_hull(posterior, model.process_noise_range);
}

geom::Interval classical_update(const geom::Interval& prior, double y,
                                const ScalarSystemModel& model) {
    return model.measurement_preimage(y, model.measurement_noise_range).intersect(prior);
}

geom::Interval optimal_step_related(const geom::Interval& posterior_prev, double y,
                                    const ScalarSystemModel& model,
                                    const oracle::McConfig& cfg) {
    return oracle::mc_posterior_step(posterior_prev, y, cfg, model).hull;
}

geom::Interval optimal_step_related_grid(const geom::Interval& posterior_prev, double y,
                                         const ScalarSystemModel& model, double resolution) {
    return oracle::grid_sweep_posterior_step(posterior_prev, y, resolution, model);
}

namespace {

// B * wRange as a segment polygon for a 2D state.
geom::PolygonV process_noise_segment(const LinearModel& model) {
    const geom::Interval& w = model.process_noise_range;
    const geom::Vec2 b(model.B(0, 0), model.B(1, 0));
    return geom::PolygonV::from_hull({w.lo() * b, w.hi() * b});
}

// The two halfspaces of {x : C x in [y] - D*vRange}.
std::pair<geom::Halfspace, geom::Halfspace> measurement_slab(const Eigen::MatrixXd& c_row,
                                                             double y,
                                                             const geom::Interval& dv) {
    Eigen::VectorXd n = c_row.row(0).transpose();
    const geom::Interval cx(y - dv.hi(), y - dv.lo());
    return {geom::Halfspace(n, cx.hi()), geom::Halfspace(-n, -cx.lo())};
}

} // namespace

geom::PolygonV classical_predict(const geom::PolygonV& posterior, const LinearModel& model) {
    if (posterior.is_empty()) {
        throw std::invalid_argument("classical_predict: empty posterior");
    }
    const Eigen::Matrix2d a = model.A;
    return geom::minkowski_sum(geom::linear_image(a, posterior), process_noise_segment(model));
}

geom::PolygonV classical_update(const geom::PolygonV& prior, double y, const LinearModel& model) {
    const auto [upper, lower] = measurement_slab(model.C, y, model.measurement_noise_image());
    return geom::clip_halfspace(geom::clip_halfspace(prior, upper), lower);
}

geom::Interval classical_predict(const geom::Interval& posterior, const LinearModel& model) {
    if (posterior.is_empty()) {
        throw std::invalid_argument("classical_predict: empty posterior");
    }
    return posterior.scaled(model.A(0, 0)) + model.process_noise_range.scaled(model.B(0, 0));
}

geom::Interval classical_update(const geom::Interval& prior, double y, const LinearModel& model) {
    const geom::Interval dv = model.measurement_noise_image();
    const double c = model.C(0, 0);
    if (c == 0.0) {
        throw std::invalid_argument("classical_update: measurement matrix is zero");
    }
    const geom::Interval strip = geom::Interval(y - dv.hi(), y - dv.lo()).scaled(1.0 / c);
    return strip.intersect(prior);
}

PbStepResult pb_filter_step(const geom::PolytopeH& constraints, double y, int k,
                            const AugmentedModel& model) {
    if (model.state_dim() != 3) {
        throw std::invalid_argument("pb_filter_step: augmented state must be 3-dimensional");
    }
    const Eigen::Matrix3d a_bar = model.A_bar;
    Eigen::Matrix3d a_pow = Eigen::Matrix3d::Identity();
    for (int i = 0; i < k; ++i) {
        a_pow = a_bar * a_pow;
    }

    PbStepResult res;
    res.constraints = constraints;
    const Eigen::MatrixXd row = model.C_bar * a_pow;
    const auto [upper, lower] = measurement_slab(row, y, model.measurement_noise_image());
    res.constraints.halfspaces.push_back(upper);
    res.constraints.halfspaces.push_back(lower);

    const std::vector<geom::Vec3> verts_z0 = geom::vertex_enumerate_3d(res.constraints);
    res.posterior = geom::project_to_plane(geom::linear_image(a_pow, verts_z0), 0, 1);
    return res;
}

FilterTrace run_filter(const ScalarSystemModel& model, std::span<const double> measurements,
                       Engine engine, const oracle::McConfig* mc) {
    if (engine != Engine::Classical && engine != Engine::OptimalMc) {
        throw std::invalid_argument("run_filter(scalar): engine must be classical or optimal");
    }
    if (engine == Engine::OptimalMc && mc == nullptr) {
        throw std::invalid_argument("run_filter: optimal engine needs a Monte Carlo config");
    }

    FilterTrace trace;
    trace.engine = engine;
    geom::Interval posterior = model.initial_range;
    for (std::size_t k = 0; k < measurements.size(); ++k) {
        const double y = measurements[k];
        geom::Interval prior =
            k == 0 ? model.initial_range : classical_predict(posterior, model);
        geom::Interval next;
        if (engine == Engine::Classical || k == 0) {
            // The optimal posterior at k = 0 coincides with the classical
            // one: there is no earlier noise for the measurement noise to
            // be related to.
            next = classical_update(prior, y, model);
        } else {
            oracle::McConfig cfg = *mc;
            cfg.seed = rng::derive_stream(mc->seed, k);
            next = optimal_step_related(posterior, y, model, cfg);
        }
        trace.steps.push_back({static_cast<int>(k), prior, next, y});
        if (next.is_empty()) {
            trace.inconsistent_at = static_cast<int>(k);
            break;
        }
        posterior = next;
    }
    return trace;
}

FilterTrace run_filter(const LinearModel& model, std::span<const double> measurements) {
    model.validate();
    FilterTrace trace;
    trace.engine = Engine::Classical;
    const int n = model.state_dim();
    if (n == 1) {
        geom::Interval posterior = model.initial_range.axis(0);
        for (std::size_t k = 0; k < measurements.size(); ++k) {
            const geom::Interval prior =
                k == 0 ? posterior : classical_predict(posterior, model);
            const geom::Interval next = classical_update(prior, measurements[k], model);
            trace.steps.push_back({static_cast<int>(k), prior, next, measurements[k]});
            if (next.is_empty()) {
                trace.inconsistent_at = static_cast<int>(k);
                break;
            }
            posterior = next;
        }
        return trace;
    }
    if (n != 2) {
        throw std::invalid_argument("run_filter(linear): state dimension must be 1 or 2");
    }
    geom::PolygonV posterior = geom::box_to_polygon(model.initial_range);
    for (std::size_t k = 0; k < measurements.size(); ++k) {
        const geom::PolygonV prior =
            k == 0 ? posterior : classical_predict(posterior, model);
        const geom::PolygonV next = classical_update(prior, measurements[k], model);
        trace.steps.push_back({static_cast<int>(k), prior, next, measurements[k]});
        if (next.is_empty()) {
            trace.inconsistent_at = static_cast<int>(k);
            break;
        }
        posterior = next;
    }
    return trace;
}

FilterTrace run_filter(const AugmentedModel& model, std::span<const double> measurements) {
    FilterTrace trace;
    trace.engine = Engine::PbProjection;
    geom::PolytopeH constraints = geom::box_polytope_3d(model.initial_range);

    const Eigen::Matrix3d a_bar = model.A_bar;
    Eigen::Matrix3d a_pow = Eigen::Matrix3d::Identity();

    for (std::size_t k = 0; k < measurements.size(); ++k) {
        // Prior: the forward image of everything known before this step's
        // measurement, projected to the state plane.
        if (k > 0) {
            a_pow = a_bar * a_pow;
        }
        const geom::PolygonV prior = geom::project_to_plane(
            geom::linear_image(a_pow, geom::vertex_enumerate_3d(constraints)), 0, 1);

        PbStepResult step = pb_filter_step(constraints, measurements[k],
                                           static_cast<int>(k), model);
        trace.steps.push_back({static_cast<int>(k), prior, step.posterior, measurements[k]});
        if (step.posterior.is_empty()) {
            trace.inconsistent_at = static_cast<int>(k);
            break;
        }
        constraints = std::move(step.constraints);
    }
    return trace;
}

bool outer_bound_assert(const StateSet& optimal, const StateSet& classical, double tol) {
    if (state_set_is_empty(optimal)) {
        return true;
    }
    if (const auto* oi = std::get_if<geom::Interval>(&optimal)) {
        const auto* ci = std::get_if<geom::Interval>(&classical);
        if (ci == nullptr) {
            throw std::invalid_argument("outer_bound_assert: mismatched set kinds");
        }
        return ci->contains(*oi, tol);
    }
    const auto& op = std::get<geom::PolygonV>(optimal);
    const auto* cp = std::get_if<geom::PolygonV>(&classical);
    if (cp == nullptr) {
        throw std::invalid_argument("outer_bound_assert: mismatched set kinds");
    }
    return geom::contains(*cp, op, tol);
}

} // namespace smfkit::smf
