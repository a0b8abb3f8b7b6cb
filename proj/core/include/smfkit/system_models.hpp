#ifndef SMFKIT_SYSTEM_MODELS_HPP
#define SMFKIT_SYSTEM_MODELS_HPP

#include <Eigen/Dense>
#include <functional>

#include "smfkit/interval.hpp"

namespace smfkit::smf {

// Scalar nonlinear plant x_{k+1} = f(x_k, w_k), y_k = g(x_k, v_k) with
// bounded noises. The set-propagation hooks are supplied alongside the
// pointwise maps so the filters never have to invert g symbolically:
//   transition_hull       exact interval image of f over posterior x wRange
//   measurement_preimage  {x : exists v in vset, g(x, v) = y}
//   measurement_consistent  whether some v in vset explains (x, y); this is
//                           where the x = y = 0 guard of the multiplicative
//                           measurement lives
struct ScalarSystemModel {
    geom::Interval initial_range;
    geom::Interval process_noise_range;
    geom::Interval measurement_noise_range;

    std::function<double(double, double)> transition;
    std::function<double(double, double)> measurement;

    std::function<geom::Interval(const geom::Interval&, const geom::Interval&)> transition_hull;
    std::function<geom::Interval(double, const geom::Interval&)> measurement_preimage;
    std::function<bool(double, double, const geom::Interval&)> measurement_consistent;

    // Conditional measurement-noise range given the previous process noise;
    // unset when the noises are unrelated.
    std::function<geom::Interval(double)> v_given_w;

    bool has_related_noise() const { return static_cast<bool>(v_given_w); }

    // The measurement-noise set in effect at step k for a sampled w_{k-1}.
    // Step 0 has no predecessor, so the marginal range applies.
    geom::Interval noise_set_at(int k, double w_prev) const {
        if (k >= 1 && v_given_w) {
            return v_given_w(w_prev);
        }
        return measurement_noise_range;
    }
};

// x_{k+1} = sin(x_k) + x_k + w_k,  y_k = v_k * x_k,
// x0 in [0,1], w in [0,1], v in [1,2], and the related conditional range
// [max(1, 1.8 - w), 2 - w]. `related` toggles the conditional provider so
// the same plant can be run under the unrelatedness assumption.
ScalarSystemModel make_example_a_model(bool related = true);

// Scalar linear plant as a ScalarSystemModel (a, b, c, d scalars, c != 0).
ScalarSystemModel make_scalar_linear_model(double a, double b, double c, double d,
                                           geom::Interval initial, geom::Interval w_range,
                                           geom::Interval v_range);

// x_{k+1} = A x_k + B w_k, y_k = C x_k + D v_k with scalar measurement and
// scalar noises (m = p = q = 1).
struct LinearModel {
    Eigen::MatrixXd A;
    Eigen::MatrixXd B;
    Eigen::MatrixXd C;
    Eigen::MatrixXd D;
    geom::Box initial_range;
    geom::Interval process_noise_range;
    geom::Interval measurement_noise_range;

    int state_dim() const { return static_cast<int>(A.rows()); }
    void validate() const;

    // D * vRange as an interval (scalar measurement).
    geom::Interval measurement_noise_image() const {
        return measurement_noise_range.scaled(D(0, 0));
    }
};

// The double-integrator-style system with identical process noise:
// A = [[1,1],[0,1]], B = (0.5, 1)^T, C = [1,0], D = 1,
// x0 in [-10,10]^2, w in [-1,1], v in [-1,1].
LinearModel make_example_b_model();

// State augmentation z = (x, w) for a plant whose process noise is the
// same realization at every step. The augmented dynamics are noise-free:
// A_bar = [[A, B], [0, I]], C_bar = [C, 0], initial set x0-box x wRange.
struct AugmentedModel {
    Eigen::MatrixXd A_bar;
    Eigen::MatrixXd C_bar;
    Eigen::MatrixXd D;
    geom::Box initial_range;
    geom::Interval measurement_noise_range;

    int state_dim() const { return static_cast<int>(A_bar.rows()); }

    geom::Interval measurement_noise_image() const {
        return measurement_noise_range.scaled(D(0, 0));
    }
};

AugmentedModel augment(const LinearModel& model);

} // namespace smfkit::smf

#endif
