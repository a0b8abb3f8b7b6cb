#include "smfkit/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace smfkit::geom {

namespace {

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

bool lex_less(const Vec2& a, const Vec2& b) {
    if (a.x() != b.x()) {
        return a.x() < b.x();
    }
    return a.y() < b.y();
}

// Collinearity threshold scaled by the edge lengths around the vertex.
bool collinear(const Vec2& a, const Vec2& b, const Vec2& c) {
    const double n = (b - a).norm() * (c - b).norm();
    return std::abs(cross(a, b, c)) <= kTol * std::max(1.0, n);
}

// Andrew monotone chain. Returns CCW hull without repeated endpoint;
// collinear points on the boundary are dropped.
std::vector<Vec2> monotone_chain(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Vec2& a, const Vec2& b) { return a == b; }),
              pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) {
        return pts;
    }
    std::vector<Vec2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) { // lower
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) {
            --k;
        }
        hull[k++] = pts[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i-- > 0;) { // upper
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) {
            --k;
        }
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

// Rotate so the lexicographically smallest vertex comes first, then strip
// collinear triples. Removal can expose new collinear triples, so iterate
// to a fixpoint. Assumes CCW input.
std::vector<Vec2> normalize_ccw(std::vector<Vec2> v) {
    bool removed = v.size() >= 3;
    while (removed && v.size() >= 3) {
        removed = false;
        std::vector<Vec2> cleaned;
        const std::size_t n = v.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2& prev = v[(i + n - 1) % n];
            const Vec2& cur = v[i];
            const Vec2& next = v[(i + 1) % n];
            if (collinear(prev, cur, next)) {
                removed = true;
            } else {
                cleaned.push_back(cur);
            }
        }
        if (cleaned.empty()) {
            // Fully collinear ring: keep the two lexicographic extremes.
            auto [mn, mx] = std::minmax_element(v.begin(), v.end(), lex_less);
            std::vector<Vec2> seg{*mn};
            if (!(*mx == *mn)) {
                seg.push_back(*mx);
            }
            v = std::move(seg);
            break;
        }
        v = std::move(cleaned);
    }
    if (!v.empty()) {
        auto mn = std::min_element(v.begin(), v.end(), lex_less);
        std::rotate(v.begin(), mn, v.end());
    }
    return v;
}

} // namespace

PolygonV PolygonV::from_hull(std::vector<Vec2> points) {
    for (const auto& p : points) {
        if (!p.allFinite()) {
            throw std::invalid_argument("PolygonV: non-finite point");
        }
    }
    PolygonV out;
    out.verts_ = normalize_ccw(monotone_chain(std::move(points)));
    return out;
}

PolygonV PolygonV::from_convex(std::vector<Vec2> vertices) {
    PolygonV p = from_hull(vertices);
    // A convex input loses no extreme points under hulling; anything else
    // was not convex.
    for (const auto& v : vertices) {
        if (!contains_point(p, v, kTol)) {
            throw std::invalid_argument("PolygonV::from_convex: input is not convex");
        }
    }
    return p;
}

PolygonV PolygonV::rectangle(const Interval& x, const Interval& y) {
    if (x.is_empty() || y.is_empty()) {
        return PolygonV();
    }
    return from_hull({{x.lo(), y.lo()}, {x.hi(), y.lo()}, {x.hi(), y.hi()}, {x.lo(), y.hi()}});
}

bool is_convex_ccw(const PolygonV& p) {
    const auto& v = p.vertices();
    const std::size_t n = v.size();
    if (n < 3) {
        return true;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double c = cross(v[i], v[(i + 1) % n], v[(i + 2) % n]);
        if (c < -kTol * std::max(1.0, (v[(i + 1) % n] - v[i]).norm() *
                                          (v[(i + 2) % n] - v[(i + 1) % n]).norm())) {
            return false;
        }
    }
    return true;
}

PolygonV minkowski_sum(const PolygonV& a, const PolygonV& b) {
    if (a.is_empty() || b.is_empty()) {
        return PolygonV();
    }
    std::vector<Vec2> sums;
    sums.reserve(a.size() * b.size());
    for (const auto& p : a.vertices()) {
        for (const auto& q : b.vertices()) {
            sums.push_back(p + q);
        }
    }
    return PolygonV::from_hull(std::move(sums));
}

PolygonV linear_image(const Eigen::Matrix2d& m, const PolygonV& p) {
    if (p.is_empty()) {
        return PolygonV();
    }
    std::vector<Vec2> mapped;
    mapped.reserve(p.size());
    for (const auto& v : p.vertices()) {
        mapped.push_back(m * v);
    }
    return PolygonV::from_hull(std::move(mapped));
}

PolygonV linear_image(const Eigen::Matrix2d& m, const Box& b) {
    if (b.dim() != 2) {
        throw std::invalid_argument("linear_image: box must be 2-dimensional");
    }
    return linear_image(m, box_to_polygon(b));
}

PolygonV clip_halfspace(const PolygonV& p, const Halfspace& h) {
    if (h.normal.size() != 2) {
        throw std::invalid_argument("clip_halfspace: halfspace must be 2-dimensional");
    }
    if (p.is_empty()) {
        return PolygonV();
    }
    const Vec2 n(h.normal(0), h.normal(1));
    const double c = h.offset;
    const double tol = kTol * std::max(1.0, std::abs(c));

    const auto& v = p.vertices();
    const std::size_t m = v.size();
    if (m == 1) {
        return n.dot(v[0]) <= c + tol ? p : PolygonV();
    }
    std::vector<Vec2> out;
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2& cur = v[i];
        const Vec2& nxt = v[(i + 1) % m];
        const double dc = n.dot(cur) - c;
        const double dn = n.dot(nxt) - c;
        if (dc <= tol) {
            out.push_back(cur);
        }
        const bool crosses = (dc > tol && dn < -tol) || (dc < -tol && dn > tol);
        if (crosses) {
            const double t = dc / (dc - dn);
            out.push_back(cur + t * (nxt - cur));
        }
        if (m == 2 && i == 0) {
            // A segment has a single edge; do not walk it twice.
            const double dn2 = n.dot(nxt) - c;
            if (dn2 <= tol) {
                out.push_back(nxt);
            }
            break;
        }
    }
    return PolygonV::from_hull(std::move(out));
}

double area(const PolygonV& p) {
    const auto& v = p.vertices();
    const std::size_t n = v.size();
    if (n < 3) {
        return 0.0;
    }
    double twice = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = v[i];
        const Vec2& b = v[(i + 1) % n];
        twice += a.x() * b.y() - b.x() * a.y();
    }
    return 0.5 * twice;
}

double diameter(const PolygonV& p) {
    const auto& v = p.vertices();
    double best = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            best = std::max(best, (v[i] - v[j]).norm());
        }
    }
    return best;
}

bool contains_point(const PolygonV& p, const Vec2& q, double tol) {
    const auto& v = p.vertices();
    const std::size_t n = v.size();
    if (n == 0) {
        return false;
    }
    if (n == 1) {
        return (q - v[0]).norm() <= tol;
    }
    if (n == 2) {
        // Distance to segment.
        const Vec2 d = v[1] - v[0];
        const double len2 = d.squaredNorm();
        const double t = len2 > 0 ? std::clamp((q - v[0]).dot(d) / len2, 0.0, 1.0) : 0.0;
        return (q - (v[0] + t * d)).norm() <= tol;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = v[i];
        const Vec2& b = v[(i + 1) % n];
        const Vec2 e = b - a;
        // Left-of-edge test scaled by edge length so tol is a distance.
        if (cross(a, b, q) < -tol * std::max(e.norm(), 1e-300)) {
            return false;
        }
    }
    return true;
}

bool contains(const PolygonV& outer, const PolygonV& inner, double tol) {
    if (inner.is_empty()) {
        return true;
    }
    if (outer.is_empty()) {
        return false;
    }
    return std::all_of(inner.vertices().begin(), inner.vertices().end(),
                       [&](const Vec2& q) { return contains_point(outer, q, tol); });
}

PolygonV box_to_polygon(const Box& b) {
    if (b.dim() != 2) {
        throw std::invalid_argument("box_to_polygon: box must be 2-dimensional");
    }
    if (b.is_empty()) {
        return PolygonV();
    }
    return PolygonV::rectangle(b.axis(0), b.axis(1));
}

} // namespace smfkit::geom
