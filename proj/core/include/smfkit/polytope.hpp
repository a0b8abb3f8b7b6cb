#ifndef SMFKIT_POLYTOPE_HPP
#define SMFKIT_POLYTOPE_HPP

#include <vector>

#include "smfkit/polygon.hpp"

namespace smfkit::geom {

// Convex polytope in halfspace representation. Boundedness is an invariant
// of the sets this kit produces; it is verified at vertex enumeration.
struct PolytopeH {
    std::vector<Halfspace> halfspaces;

    int dim() const {
        return halfspaces.empty() ? 0 : static_cast<int>(halfspaces.front().normal.size());
    }
};

// 3D box as six axis-aligned halfspaces.
PolytopeH box_polytope_3d(const Box& b);

// All vertices of a bounded 3D polytope by solving every plane triple and
// keeping feasible solutions (tolerance kTol), deduplicated within kTol.
// Returns an empty list for an infeasible polytope; throws
// std::runtime_error when an unbounded (recession) direction is detected.
std::vector<Vec3> vertex_enumerate_3d(const PolytopeH& p);

std::vector<Vec3> linear_image(const Eigen::Matrix3d& m, const std::vector<Vec3>& pts);

// 2D convex hull of the (axis_i, axis_j) coordinates.
PolygonV project_to_plane(const std::vector<Vec3>& pts, int axis_i, int axis_j);

} // namespace smfkit::geom

#endif
