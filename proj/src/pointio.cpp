#include "cogeom/pointio.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cogeom {

std::vector<Point> read_points(std::istream& in) {
  std::vector<Point> pts;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos || line[i] == '#') continue;
    std::istringstream ss(line);
    long long x, y;
    if (!(ss >> x >> y))
      throw std::runtime_error("point file: parse error at line " + std::to_string(lineno));
    Point p{static_cast<int32_t>(x), static_cast<int32_t>(y)};
    if (x != p.x || y != p.y || !in_coord_bounds(p))
      throw std::runtime_error("point file: coordinate out of bounds at line " +
                               std::to_string(lineno));
    pts.push_back(p);
  }
  return pts;
}

std::vector<Point> read_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_points(in);
}

void write_points(std::ostream& out, const std::vector<Point>& pts,
                  const std::string& header_comment) {
  if (!header_comment.empty()) out << header_comment << "\n";
  for (const Point& p : pts) out << p.x << " " << p.y << "\n";
}

void write_points_file(const std::string& path, const std::vector<Point>& pts,
                       const std::string& header_comment) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_points(out, pts, header_comment);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace cogeom
