#include "smfkit/polytope.hpp"

#include <cmath>
#include <stdexcept>

namespace smfkit::geom {

PolytopeH box_polytope_3d(const Box& b) {
    if (b.dim() != 3) {
        throw std::invalid_argument("box_polytope_3d: box must be 3-dimensional");
    }
    PolytopeH p;
    for (int d = 0; d < 3; ++d) {
        Eigen::VectorXd plus = Eigen::VectorXd::Zero(3);
        plus(d) = 1.0;
        p.halfspaces.emplace_back(plus, b.axis(d).hi());
        Eigen::VectorXd minus = Eigen::VectorXd::Zero(3);
        minus(d) = -1.0;
        p.halfspaces.emplace_back(minus, -b.axis(d).lo());
    }
    return p;
}

namespace {

bool satisfies_all(const PolytopeH& p, const Vec3& z) {
    for (const auto& h : p.halfspaces) {
        const double tol = kTol * std::max(1.0, std::abs(h.offset));
        if (h.normal.dot(z) > h.offset + tol) {
            return false;
        }
    }
    return true;
}

// An unbounded polyhedron that is not a parallel slab has a recession
// direction along the intersection line of two of its facet planes; the
// slab case has no plane pair with independent normals and is caught by
// the cross products all vanishing while vertices exist elsewhere.
bool has_recession_direction(const PolytopeH& p) {
    const std::size_t m = p.halfspaces.size();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const Vec3 ni = p.halfspaces[i].normal;
            const Vec3 nj = p.halfspaces[j].normal;
            Vec3 d = ni.cross(nj);
            const double len = d.norm();
            if (len <= kTol) {
                continue;
            }
            d /= len;
            for (const Vec3& dir : {d, Vec3(-d)}) {
                bool recedes = true;
                for (const auto& h : p.halfspaces) {
                    if (h.normal.dot(dir) > kTol) {
                        recedes = false;
                        break;
                    }
                }
                if (recedes) {
                    return true;
                }
            }
        }
    }
    return false;
}

} // namespace

std::vector<Vec3> vertex_enumerate_3d(const PolytopeH& p) {
    if (p.dim() != 3) {
        throw std::invalid_argument("vertex_enumerate_3d: polytope must be 3-dimensional");
    }
    if (p.halfspaces.size() < 4) {
        throw std::invalid_argument("vertex_enumerate_3d: needs at least 4 halfspaces");
    }
    if (has_recession_direction(p)) {
        throw std::runtime_error("vertex_enumerate_3d: polytope is unbounded");
    }

    const std::size_t m = p.halfspaces.size();
    std::vector<Vec3> verts;
    Eigen::Matrix3d a;
    Vec3 c;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            for (std::size_t k = j + 1; k < m; ++k) {
                a.row(0) = p.halfspaces[i].normal.transpose();
                a.row(1) = p.halfspaces[j].normal.transpose();
                a.row(2) = p.halfspaces[k].normal.transpose();
                if (std::abs(a.determinant()) <= kTol) {
                    continue;
                }
                c << p.halfspaces[i].offset, p.halfspaces[j].offset, p.halfspaces[k].offset;
                const Vec3 z = a.partialPivLu().solve(c);
                if (!z.allFinite() || !satisfies_all(p, z)) {
                    continue;
                }
                bool dup = false;
                for (const auto& v : verts) {
                    if ((v - z).norm() <= kTol) {
                        dup = true;
                        break;
                    }
                }
                if (!dup) {
                    verts.push_back(z);
                }
            }
        }
    }
    return verts;
}

std::vector<Vec3> linear_image(const Eigen::Matrix3d& m, const std::vector<Vec3>& pts) {
    std::vector<Vec3> out;
    out.reserve(pts.size());
    for (const auto& p : pts) {
        out.push_back(m * p);
    }
    return out;
}

PolygonV project_to_plane(const std::vector<Vec3>& pts, int axis_i, int axis_j) {
    if (axis_i < 0 || axis_i > 2 || axis_j < 0 || axis_j > 2 || axis_i == axis_j) {
        throw std::invalid_argument("project_to_plane: axes must be distinct and in 0..2");
    }
    std::vector<Vec2> flat;
    flat.reserve(pts.size());
    for (const auto& p : pts) {
        flat.emplace_back(p(axis_i), p(axis_j));
    }
    return PolygonV::from_hull(std::move(flat));
}

} // namespace smfkit::geom
