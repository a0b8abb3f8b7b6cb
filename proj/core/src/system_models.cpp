#include "smfkit/system_models.hpp"

#include <cmath>
#include <stdexcept>

namespace smfkit::smf {

ScalarSystemModel make_example_a_model(bool related) {
    ScalarSystemModel m;
    m.initial_range = geom::Interval(0.0, 1.0);
    m.process_noise_range = geom::Interval(0.0, 1.0);
    m.measurement_noise_range = geom::Interval(1.0, 2.0);

    m.transition = [](double x, double w) { return std::sin(x) + x + w; };
    m.measurement = [](double x, double v) { return v * x; };

    // sin(x)+x is nondecreasing and the noise enters additively, so the
    // image of a box is spanned by its corners.
    m.transition_hull = [](const geom::Interval& x, const geom::Interval& w) {
        if (x.is_empty() || w.is_empty()) {
            return geom::Interval::empty();
        }
        return geom::Interval(std::sin(x.lo()) + x.lo() + w.lo(),
                              std::sin(x.hi()) + x.hi() + w.hi());
    };

    // y = v*x with v in [vlo, vhi], 0 < vlo: x ranges over [y/vhi, y/vlo]
    // for y > 0 and the mirrored interval for y < 0; y = 0 pins x = 0.
    m.measurement_preimage = [](double y, const geom::Interval& vset) {
        if (vset.is_empty()) {
            return geom::Interval::empty();
        }
        const double a = y / vset.hi();
        const double b = y / vset.lo();
        return geom::Interval(std::min(a, b), std::max(a, b));
    };

    m.measurement_consistent = [](double x, double y, const geom::Interval& vset) {
        if (x != 0.0) {
            return vset.contains(y / x);
        }
        return y == 0.0;
    };

    if (related) {
        m.v_given_w = [](double w) {
            return geom::Interval(std::max(1.0, 1.8 - w), 2.0 - w);
        };
    }
    return m;
}

ScalarSystemModel make_scalar_linear_model(double a, double b, double c, double d,
                                           geom::Interval initial, geom::Interval w_range,
                                           geom::Interval v_range) {
    if (c == 0.0) {
        throw std::invalid_argument("make_scalar_linear_model: c must be nonzero");
    }
    ScalarSystemModel m;
    m.initial_range = initial;
    m.process_noise_range = w_range;
    m.measurement_noise_range = v_range;

    m.transition = [a, b](double x, double w) { return a * x + b * w; };
    m.measurement = [c, d](double x, double v) { return c * x + d * v; };

    m.transition_hull = [a, b](const geom::Interval& x, const geom::Interval& w) {
        if (x.is_empty() || w.is_empty()) {
            return geom::Interval::empty();
        }
        return x.scaled(a) + w.scaled(b);
    };

    // y = c*x + d*v  =>  x in (y - d*vset) / c.
    m.measurement_preimage = [c, d](double y, const geom::Interval& vset) {
        if (vset.is_empty()) {
            return geom::Interval::empty();
        }
        return vset.scaled(-d).shifted(y).scaled(1.0 / c);
    };

    m.measurement_consistent = [c, d](double x, double y, const geom::Interval& vset) {
        if (d == 0.0) {
            return y == c * x;
        }
        return vset.contains((y - c * x) / d);
    };
    return m;
}

void LinearModel::validate() const {
    const auto n = A.rows();
    if (A.cols() != n || B.rows() != n || C.cols() != n) {
        throw std::invalid_argument("LinearModel: inconsistent state dimension");
    }
    if (B.cols() != 1 || C.rows() != 1 || D.rows() != 1 || D.cols() != 1) {
        throw std::invalid_argument("LinearModel: expected scalar noise and measurement");
    }
    if (static_cast<int>(initial_range.dim()) != n) {
        throw std::invalid_argument("LinearModel: initial set dimension mismatch");
    }
}

LinearModel make_example_b_model() {
    LinearModel m{
        .A = Eigen::MatrixXd(2, 2),
        .B = Eigen::MatrixXd(2, 1),
        .C = Eigen::MatrixXd(1, 2),
        .D = Eigen::MatrixXd(1, 1),
        .initial_range = geom::Box({geom::Interval(-10.0, 10.0), geom::Interval(-10.0, 10.0)}),
        .process_noise_range = geom::Interval(-1.0, 1.0),
        .measurement_noise_range = geom::Interval(-1.0, 1.0),
    };
    m.A << 1.0, 1.0, 0.0, 1.0;
    m.B << 0.5, 1.0;
    m.C << 1.0, 0.0;
    m.D << 1.0;
    return m;
}

AugmentedModel augment(const LinearModel& model) {
    model.validate();
    const int n = model.state_dim();
    const int p = static_cast<int>(model.B.cols());

    AugmentedModel aug{
        .A_bar = Eigen::MatrixXd::Zero(n + p, n + p),
        .C_bar = Eigen::MatrixXd::Zero(1, n + p),
        .D = model.D,
        .initial_range = geom::Box([&] {
            std::vector<geom::Interval> axes = model.initial_range.axes();
            axes.push_back(model.process_noise_range);
            return axes;
        }()),
        .measurement_noise_range = model.measurement_noise_range,
    };
    aug.A_bar.topLeftCorner(n, n) = model.A;
    aug.A_bar.topRightCorner(n, p) = model.B;
    aug.A_bar.bottomRightCorner(p, p) = Eigen::MatrixXd::Identity(p, p);
    aug.C_bar.leftCols(n) = model.C;
    return aug;
}

} // namespace smfkit::smf
