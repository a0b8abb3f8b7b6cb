#ifndef SMFKIT_GEOMETRY_IO_HPP
#define SMFKIT_GEOMETRY_IO_HPP

#include <string>
#include <vector>

#include "smfkit/polytope.hpp"

namespace smfkit::geom {

// JSON schemas:
//   vertex sets  {"dim":2,"vertices":[[x,y],...]}   (or dim 3 with triples)
//   polytopes    {"halfspaces":[{"normal":[...],"offset":r},...]}
// Serialization is hand-rolled on top of the shared 12-significant-digit
// number formatter, so identical inputs produce byte-identical text.

std::string polygon_to_json(const PolygonV& p);
PolygonV polygon_from_json(const std::string& text);

std::string vertices3_to_json(const std::vector<Vec3>& pts);
std::vector<Vec3> vertices3_from_json(const std::string& text);

std::string polytope_to_json(const PolytopeH& p);
PolytopeH polytope_from_json(const std::string& text);

} // namespace smfkit::geom

#endif
