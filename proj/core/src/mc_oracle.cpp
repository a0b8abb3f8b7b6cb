#include "smfkit/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smfkit/rng.hpp"

namespace smfkit::oracle {

AcceptanceStarvation::AcceptanceStarvation(std::uint64_t attempts_, std::uint64_t accepted_)
    : std::runtime_error("acceptance starvation: " + std::to_string(accepted_) + " accepted in " +
                         std::to_string(attempts_) + " attempts (rate " +
                         std::to_string(attempts_ ? static_cast<double>(accepted_) /
                                                        static_cast<double>(attempts_)
                                                  : 0.0) +
                         ")"),
      attempts(attempts_), accepted(accepted_),
      acceptance_rate(attempts_ ? static_cast<double>(accepted_) / static_cast<double>(attempts_)
                                : 0.0) {}

McStepResult mc_posterior_step(const geom::Interval& prev, double y, const McConfig& cfg,
                               const smf::ScalarSystemModel& model) {
    if (prev.is_empty()) {
        throw std::invalid_argument("mc_posterior_step: empty previous posterior");
    }
    if (cfg.samples < 1) {
        throw std::invalid_argument("mc_posterior_step: samples must be positive");
    }

    rng::SplitMix64 gen(cfg.seed);

    const std::uint64_t budget =
        static_cast<std::uint64_t>(cfg.max_attempts_multiplier) *
        static_cast<std::uint64_t>(cfg.samples);

    McStepResult res;
    double lo = 0.0;
    double hi = 0.0;
    const geom::Interval& w_range = model.process_noise_range;

    while (res.accepted < static_cast<std::uint64_t>(cfg.samples)) {
        if (res.attempts >= budget) {
            throw AcceptanceStarvation(res.attempts, res.accepted);
        }
        ++res.attempts;
        const double x_prev = gen.uniform(prev.lo(), prev.hi());
        const double w = gen.uniform(w_range.lo(), w_range.hi());
        const double x_next = model.transition(x_prev, w);
        const geom::Interval vset =
            model.has_related_noise() ? model.v_given_w(w) : model.measurement_noise_range;
        if (!model.measurement_consistent(x_next, y, vset)) {
            continue;
        }
        if (res.accepted == 0) {
            lo = hi = x_next;
        } else {
            lo = std::min(lo, x_next);
            hi = std::max(hi, x_next);
        }
        ++res.accepted;
        if (cfg.collect_samples) {
            res.samples.push_back({x_next, w, x_next != 0.0 ? y / x_next : 0.0});
        }
    }
    res.hull = geom::Interval(lo, hi);
    return res;
}

geom::Interval grid_sweep_posterior_step(const geom::Interval& prev, double y,
                                         double resolution,
                                         const smf::ScalarSystemModel& model) {
    if (prev.is_empty()) {
        throw std::invalid_argument("grid_sweep_posterior_step: empty previous posterior");
    }
    if (resolution <= 0.0) {
        throw std::invalid_argument("grid_sweep_posterior_step: resolution must be positive");
    }

    const auto grid_count = [resolution](const geom::Interval& iv) {
        return static_cast<std::size_t>(std::ceil(iv.diameter() / resolution)) + 1;
    };
    const auto grid_at = [](const geom::Interval& iv, std::size_t i, std::size_t n) {
        if (n <= 1) {
            return iv.mid();
        }
        // Inclusive linspace: both endpoints are grid points.
        return iv.lo() + (iv.hi() - iv.lo()) * static_cast<double>(i) / static_cast<double>(n - 1);
    };

    const geom::Interval& w_range = model.process_noise_range;
    const std::size_t nx = grid_count(prev);
    const std::size_t nw = grid_count(w_range);

    bool any = false;
    double lo = 0.0;
    double hi = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
        const double x_prev = grid_at(prev, i, nx);
        for (std::size_t j = 0; j < nw; ++j) {
            const double w = grid_at(w_range, j, nw);
            const double x_next = model.transition(x_prev, w);
            const geom::Interval vset =
                model.has_related_noise() ? model.v_given_w(w) : model.measurement_noise_range;
            if (!model.measurement_consistent(x_next, y, vset)) {
                continue;
            }
            if (!any) {
                lo = hi = x_next;
                any = true;
            } else {
                lo = std::min(lo, x_next);
                hi = std::max(hi, x_next);
            }
        }
    }
    return any ? geom::Interval(lo, hi) : geom::Interval::empty();
}

} // namespace smfkit::oracle
