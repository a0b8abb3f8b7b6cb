#include "smfkit/grid_oracle.hpp"

#include <cmath>
#include <map>
#include <string>

namespace smfkit::oracle {

GridBudgetExceeded::GridBudgetExceeded(std::uint64_t budget, double suggested)
    : std::runtime_error("grid oracle budget of " + std::to_string(budget) +
                         " tuples exceeded; retry with resolution >= " +
                         std::to_string(suggested)),
      suggested_resolution(suggested) {}

namespace {

geom::Interval inflate_for_match(const geom::Interval& vset, double accept_tol) {
    if (vset.is_empty()) {
        return vset;
    }
    const double scale = std::max({1.0, std::abs(vset.lo()), std::abs(vset.hi())});
    return vset.inflated(accept_tol * scale);
}

// Frontier of surviving states, bucketed by grid cell. Each cell keeps the
// exact extreme representatives seen so far; propagating only those is
// sound for the hull because the transitions in scope are monotone in x.
using Frontier = std::map<std::int64_t, std::pair<double, double>>;

void insert(Frontier& f, double x, double resolution) {
    const auto cell = static_cast<std::int64_t>(std::floor(x / resolution));
    auto [it, fresh] = f.try_emplace(cell, x, x);
    if (!fresh) {
        it->second.first = std::min(it->second.first, x);
        it->second.second = std::max(it->second.second, x);
    }
}

geom::Interval hull_of(const Frontier& f) {
    if (f.empty()) {
        return geom::Interval::empty();
    }
    double lo = f.begin()->second.first;
    double hi = f.begin()->second.second;
    for (const auto& [cell, mm] : f) {
        lo = std::min(lo, mm.first);
        hi = std::max(hi, mm.second);
    }
    return geom::Interval(lo, hi);
}

std::vector<double> inclusive_grid(const geom::Interval& iv, double resolution) {
    const auto n = static_cast<std::size_t>(std::ceil(iv.diameter() / resolution)) + 1;
    std::vector<double> pts;
    pts.reserve(n);
    if (n == 1) {
        pts.push_back(iv.mid());
        return pts;
    }
    for (std::size_t i = 0; i < n; ++i) {
        pts.push_back(iv.lo() +
                      (iv.hi() - iv.lo()) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    return pts;
}

} // namespace

GridPosterior grid_posterior(const smf::ScalarSystemModel& model,
                             std::span<const double> measurements, const GridSpec& spec) {
    if (spec.resolution <= 0.0) {
        throw std::invalid_argument("grid_posterior: resolution must be positive");
    }
    if (measurements.empty()) {
        throw std::invalid_argument("grid_posterior: needs at least one measurement");
    }

    GridPosterior out;
    const auto charge = [&](std::uint64_t n) {
        out.evaluated += n;
        if (out.evaluated > spec.budget) {
            throw GridBudgetExceeded(spec.budget, spec.resolution * 4.0);
        }
    };

    const bool conditional =
        spec.noise_mode == NoiseMode::Conditional && model.has_related_noise();

    // Step 0: the measurement tests the initial state directly. The
    // conditional range is undefined without a previous process noise, so
    // the marginal applies in both modes.
    Frontier frontier;
    const geom::Interval v_marginal = inflate_for_match(model.measurement_noise_range,
                                                        spec.accept_tol);
    for (const double x0 : inclusive_grid(model.initial_range, spec.resolution)) {
        charge(1);
        if (model.measurement_consistent(x0, measurements[0], v_marginal)) {
            insert(frontier, x0, spec.resolution);
        }
    }
    out.hulls.push_back(hull_of(frontier));

    const std::vector<double> w_grid =
        inclusive_grid(model.process_noise_range, spec.resolution);

    for (std::size_t k = 1; k < measurements.size(); ++k) {
        const double y = measurements[k];
        Frontier next;
        for (const auto& [cell, mm] : frontier) {
            const double reps[2] = {mm.first, mm.second};
            const std::size_t nreps = mm.first == mm.second ? 1 : 2;
            for (std::size_t r = 0; r < nreps; ++r) {
                for (const double w : w_grid) {
                    charge(1);
                    const double x_next = model.transition(reps[r], w);
                    const geom::Interval vset = inflate_for_match(
                        conditional ? model.v_given_w(w) : model.measurement_noise_range,
                        spec.accept_tol);
                    if (model.measurement_consistent(x_next, y, vset)) {
                        insert(next, x_next, spec.resolution);
                    }
                }
            }
        }
        frontier = std::move(next);
        out.hulls.push_back(hull_of(frontier));
        if (frontier.empty()) {
            // Nothing survives; later steps stay empty.
            for (std::size_t rest = k + 1; rest < measurements.size(); ++rest) {
                out.hulls.push_back(geom::Interval::empty());
            }
            break;
        }
    }
    return out;
}

} // namespace smfkit::oracle
