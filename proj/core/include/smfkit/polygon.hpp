#ifndef SMFKIT_POLYGON_HPP
#define SMFKIT_POLYGON_HPP

#include <Eigen/Dense>
#include <vector>

#include "smfkit/interval.hpp"

namespace smfkit::geom {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

// {z : normal . z <= offset}; dimension follows the normal (2 or 3).
struct Halfspace {
    Eigen::VectorXd normal;
    double offset;

    Halfspace(Eigen::VectorXd n, double c) : normal(std::move(n)), offset(c) {
        if (normal.size() == 0 || normal.isZero(0.0)) {
            throw std::invalid_argument("Halfspace: zero normal");
        }
    }

    double signed_excess(const Eigen::VectorXd& z) const {
        return normal.dot(z) - offset;
    }
};

// Convex 2D polygon in vertex representation, counter-clockwise, normalized
// (no three consecutive collinear vertices, lexicographically smallest
// vertex first). Zero vertices is the EMPTY polygon; one or two vertices
// are legal degenerate sets with area 0.
class PolygonV {
public:
    PolygonV() = default; // EMPTY

    // Convex hull of an arbitrary point cloud.
    static PolygonV from_hull(std::vector<Vec2> points);

    // Accepts vertices already known to be convex (any orientation) and
    // normalizes them; throws if the input is not convex.
    static PolygonV from_convex(std::vector<Vec2> vertices);

    static PolygonV rectangle(const Interval& x, const Interval& y);

    bool is_empty() const { return verts_.empty(); }
    std::size_t size() const { return verts_.size(); }
    const std::vector<Vec2>& vertices() const { return verts_; }
    const Vec2& vertex(std::size_t i) const { return verts_[i]; }

    friend bool operator==(const PolygonV& a, const PolygonV& b) {
        return a.verts_ == b.verts_;
    }

private:
    std::vector<Vec2> verts_;
};

// Validator: convex, CCW, normalized. Degenerate polygons pass.
bool is_convex_ccw(const PolygonV& p);

PolygonV minkowski_sum(const PolygonV& a, const PolygonV& b);

// Hull of the mapped vertices; exact for linear maps of convex sets.
PolygonV linear_image(const Eigen::Matrix2d& m, const PolygonV& p);
PolygonV linear_image(const Eigen::Matrix2d& m, const Box& b); // 2D box

// One Sutherland-Hodgman plane clip. Result may be EMPTY.
PolygonV clip_halfspace(const PolygonV& p, const Halfspace& h);

double area(const PolygonV& p);             // shoelace; EMPTY -> 0
double diameter(const PolygonV& p);         // max pairwise vertex distance; EMPTY -> 0
bool contains_point(const PolygonV& p, const Vec2& q, double tol);
// Every vertex of inner lies inside all edges of outer within tol.
bool contains(const PolygonV& outer, const PolygonV& inner, double tol);

PolygonV box_to_polygon(const Box& b); // dim-2 boxes

} // namespace smfkit::geom

#endif
