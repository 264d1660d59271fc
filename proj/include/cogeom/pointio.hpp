#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cogeom/geom.hpp"

namespace cogeom {

/// Point text format: one "x y" pair of signed decimal integers per line;
/// blank lines and lines starting with '#' are ignored. Coordinates outside
/// the exactness bounds are rejected.
std::vector<Point> read_points(std::istream& in);
std::vector<Point> read_points_file(const std::string& path);

void write_points(std::ostream& out, const std::vector<Point>& pts,
                  const std::string& header_comment = "");
void write_points_file(const std::string& path, const std::vector<Point>& pts,
                       const std::string& header_comment = "");

}  // namespace cogeom
