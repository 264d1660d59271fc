#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "cogeom/datagen.hpp"
#include "cogeom/maxima.hpp"
#include "cogeom/pointio.hpp"
#include "cogeom/rng.hpp"

using namespace cogeom;

namespace {

// second, independent oracle: all-pairs dominance filter
std::vector<Point> maxima_quadratic(const std::vector<Point>& pts) {
  std::vector<Point> uniq = pts;
  std::sort(uniq.begin(), uniq.end(), lex_less);
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  std::vector<Point> out;
  for (const Point& p : uniq) {
    bool dominated = false;
    for (const Point& q : uniq)
      if (dominates(q, p)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [](const Point& a, const Point& b) { return b.x < a.x; });
  return out;
}

}  // namespace

TEST_CASE("oracle_maxima hand examples") {
  std::vector<Point> pts = {{1, 5}, {2, 3}, {3, 4}, {4, 1}, {5, 2}};
  CHECK(oracle_maxima(pts) == std::vector<Point>{{5, 2}, {3, 4}, {1, 5}});
  CHECK(oracle_maxima({{7, 7}}) == std::vector<Point>{{7, 7}});
  // duplicates collapse, equal-x columns keep only the top point
  CHECK(oracle_maxima({{1, 1}, {1, 1}, {1, 4}}) == std::vector<Point>{{1, 4}});
}

TEST_CASE("oracle_maxima equals quadratic dominance filter") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    size_t n = 1 + rng.below(512);
    std::vector<Point> pts(n);
    for (auto& p : pts)
      p = Point{static_cast<int32_t>(rng.range(-60, 60)),
                static_cast<int32_t>(rng.range(-60, 60))};
    CHECK(oracle_maxima(pts) == maxima_quadratic(pts));
  }
}

TEST_CASE("oracle_hull basics") {
  CHECK(oracle_hull({{0, 0}, {4, 0}, {2, 3}}) ==
        std::vector<Point>{{0, 0}, {4, 0}, {2, 3}});
  CHECK(oracle_hull({{0, 0}, {1, 1}, {2, 2}, {3, 3}}) ==
        std::vector<Point>{{0, 0}, {3, 3}});
  CHECK(oracle_hull({{5, 1}, {5, 9}, {5, 4}}) == std::vector<Point>{{5, 1}, {5, 9}});
  // square + interior center
  auto h = oracle_hull({{0, 0}, {0, 2}, {2, 0}, {2, 2}, {1, 1}});
  CHECK(h == std::vector<Point>{{0, 0}, {2, 0}, {2, 2}, {0, 2}});
}

TEST_CASE("maxima generator hits the target output size") {
  for (auto [n, h] : std::vector<std::pair<uint64_t, uint64_t>>{
           {5, 5}, {1000, 1}, {4096, 64}, {777, 33}, {2, 1}}) {
    InstanceSpec spec{n, h, InstanceKind::kMaxima, 12345 + n, true};
    std::vector<Point> pts = gen_maxima_instance(spec);
    CHECK(pts.size() == n);
    CHECK(oracle_maxima(pts).size() == h);
    std::set<std::pair<int32_t, int32_t>> uniq;
    for (const Point& p : pts) uniq.insert({p.x, p.y});
    CHECK(uniq.size() == n);  // no duplicates
  }
  CHECK_THROWS(gen_maxima_instance(InstanceSpec{10, 0, InstanceKind::kMaxima, 1, true}));
  CHECK_THROWS(gen_maxima_instance(InstanceSpec{10, 11, InstanceKind::kMaxima, 1, true}));
}

TEST_CASE("maxima generator reproducible from seed") {
  InstanceSpec spec{512, 31, InstanceKind::kMaxima, 99, true};
  CHECK(gen_maxima_instance(spec) == gen_maxima_instance(spec));
  spec.rng_seed = 100;
  InstanceSpec other{512, 31, InstanceKind::kMaxima, 99, true};
  CHECK(gen_maxima_instance(spec) != gen_maxima_instance(other));
}

TEST_CASE("hull generator hits the target output size") {
  for (auto [n, h] : std::vector<std::pair<uint64_t, uint64_t>>{
           {10, 3}, {16, 16}, {500, 12}, {2048, 64}, {333, 100}}) {
    InstanceSpec spec{n, h, InstanceKind::kHull, 5 + n, true};
    std::vector<Point> pts = gen_hull_instance(spec);
    CHECK(pts.size() == n);
    CHECK(oracle_hull(pts).size() == h);
  }
  CHECK_THROWS(gen_hull_instance(InstanceSpec{10, 2, InstanceKind::kHull, 1, true}));
}

TEST_CASE("hull generator survives larger vertex counts") {
  InstanceSpec spec{4096, 4096, InstanceKind::kHull, 8, false};
  std::vector<Point> pts = gen_hull_instance(spec);
  CHECK(oracle_hull(pts).size() == 4096);
  for (const Point& p : pts) CHECK(in_coord_bounds(p));
}

TEST_CASE("point text round trip with comments") {
  std::vector<Point> pts = {{-3, 4}, {0, 0}, {67108864, -67108864}};
  std::ostringstream out;
  write_points(out, pts, "# header line");
  std::istringstream in(out.str() + "\n# trailing comment\n\n");
  CHECK(read_points(in) == pts);

  std::istringstream bad("1 2\n99999999999 0\n");
  CHECK_THROWS(read_points(bad));
  std::istringstream junk("1 2\nfoo bar\n");
  CHECK_THROWS(read_points(junk));
}
