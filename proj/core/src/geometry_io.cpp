#include "smfkit/geometry_io.hpp"

#include <json.hpp>

#include <stdexcept>

#include "smfkit/number_format.hpp"

namespace smfkit::geom {

namespace {

using nlohmann::json;

std::string rows_to_json(int dim, const std::vector<std::vector<double>>& rows) {
    std::string out = "{\"dim\":" + std::to_string(dim) + ",\"vertices\":[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0) {
            out += ",";
        }
        out += "[";
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            if (j > 0) {
                out += ",";
            }
            out += textio::format_number(rows[i][j]);
        }
        out += "]";
    }
    out += "]}";
    return out;
}

std::vector<std::vector<double>> rows_from_json(const std::string& text, int expect_dim) {
    const json j = json::parse(text);
    if (!j.contains("dim") || !j.contains("vertices")) {
        throw std::invalid_argument("vertex JSON: missing dim/vertices");
    }
    if (j.at("dim").get<int>() != expect_dim) {
        throw std::invalid_argument("vertex JSON: unexpected dimension");
    }
    std::vector<std::vector<double>> rows;
    for (const auto& row : j.at("vertices")) {
        std::vector<double> r = row.get<std::vector<double>>();
        if (static_cast<int>(r.size()) != expect_dim) {
            throw std::invalid_argument("vertex JSON: row dimension mismatch");
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace

std::string polygon_to_json(const PolygonV& p) {
    std::vector<std::vector<double>> rows;
    rows.reserve(p.size());
    for (const auto& v : p.vertices()) {
        rows.push_back({v.x(), v.y()});
    }
    return rows_to_json(2, rows);
}

PolygonV polygon_from_json(const std::string& text) {
    std::vector<Vec2> pts;
    for (const auto& r : rows_from_json(text, 2)) {
        pts.emplace_back(r[0], r[1]);
    }
    return PolygonV::from_convex(std::move(pts));
}

std::string vertices3_to_json(const std::vector<Vec3>& pts) {
    std::vector<std::vector<double>> rows;
    rows.reserve(pts.size());
    for (const auto& v : pts) {
        rows.push_back({v.x(), v.y(), v.z()});
    }
    return rows_to_json(3, rows);
}

std::vector<Vec3> vertices3_from_json(const std::string& text) {
    std::vector<Vec3> pts;
    for (const auto& r : rows_from_json(text, 3)) {
        pts.emplace_back(r[0], r[1], r[2]);
    }
    return pts;
}

std::string polytope_to_json(const PolytopeH& p) {
    std::string out = "{\"halfspaces\":[";
    for (std::size_t i = 0; i < p.halfspaces.size(); ++i) {
        if (i > 0) {
            out += ",";
        }
        out += "{\"normal\":[";
        const auto& h = p.halfspaces[i];
        for (int j = 0; j < h.normal.size(); ++j) {
            if (j > 0) {
                out += ",";
            }
            out += textio::format_number(h.normal(j));
        }
        out += "],\"offset\":" + textio::format_number(h.offset) + "}";
    }
    out += "]}";
    return out;
}

PolytopeH polytope_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (!j.contains("halfspaces")) {
        throw std::invalid_argument("polytope JSON: missing halfspaces");
    }
    PolytopeH p;
    for (const auto& hj : j.at("halfspaces")) {
        const std::vector<double> n = hj.at("normal").get<std::vector<double>>();
        Eigen::VectorXd normal(static_cast<int>(n.size()));
        for (std::size_t i = 0; i < n.size(); ++i) {
            normal(static_cast<int>(i)) = n[i];
        }
        p.halfspaces.emplace_back(std::move(normal), hj.at("offset").get<double>());
    }
    return p;
}

} // namespace smfkit::geom
