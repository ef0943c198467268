#include <cmath>
#include <doctest.h>

#include "cfsim/errors.hpp"
#include "cfsim/topology.hpp"

using namespace cfsim;

namespace {
NetworkConfig table_cfg() {
  NetworkConfig cfg;  // defaults are the reference parameters
  return cfg;
}
}  // namespace

TEST_CASE("cluster_rectangles tile the square exactly") {
  NetworkConfig cfg = table_cfg();

  SUBCASE("1x1 is the identity tiling") {
    cfg.grid = {1, 1};
    const auto rects = cluster_rectangles(cfg);
    REQUIRE(rects.size() == 1);
    CHECK(rects[0].width() == doctest::Approx(980.0));
    CHECK(rects[0].height() == doctest::Approx(980.0));
  }

  SUBCASE("2x2 halves both sides") {
    cfg.grid = {2, 2};
    const auto rects = cluster_rectangles(cfg);
    REQUIRE(rects.size() == 4);
    for (const auto& r : rects) {
      CHECK(r.width() == doctest::Approx(490.0));
      CHECK(r.height() == doctest::Approx(490.0));
    }
  }

  SUBCASE("2x4 gives eight 490 x 245 rectangles") {
    cfg.grid = {2, 4};
    const auto rects = cluster_rectangles(cfg);
    REQUIRE(rects.size() == 8);
    for (const auto& r : rects) {
      CHECK(r.width() == doctest::Approx(245.0));
      CHECK(r.height() == doctest::Approx(490.0));
    }
  }

  SUBCASE("3x2 gives six 490 x 326.67 rectangles, row-major") {
    cfg.grid = {3, 2};
    cfg.num_aps = 96;  // 96 / 6 = 16 per cluster
    const auto rects = cluster_rectangles(cfg);
    REQUIRE(rects.size() == 6);
    for (const auto& r : rects) {
      CHECK(r.width() == doctest::Approx(490.0));
      CHECK(r.height() == doctest::Approx(980.0 / 3.0));
    }
    // row-major: rect m = r*cols + c starts at (c*w, r*h)
    CHECK(rects[3].x0 == doctest::Approx(490.0));
    CHECK(rects[3].y0 == doctest::Approx(980.0 / 3.0));
  }

  SUBCASE("areas sum to the square, interiors disjoint") {
    cfg.grid = {3, 2};
    const auto rects = cluster_rectangles(cfg);
    double area = 0;
    for (const auto& r : rects) area += r.width() * r.height();
    CHECK(area == doctest::Approx(980.0 * 980.0).epsilon(1e-12));
    for (std::size_t i = 0; i < rects.size(); ++i) {
      for (std::size_t j = i + 1; j < rects.size(); ++j) {
        const bool overlap_x = rects[i].x0 < rects[j].x1 && rects[j].x0 < rects[i].x1;
        const bool overlap_y = rects[i].y0 < rects[j].y1 && rects[j].y0 < rects[i].y1;
        CHECK_FALSE((overlap_x && overlap_y));
      }
    }
  }
}

TEST_CASE("build_deployment places exactly L APs in each cluster rectangle") {
  NetworkConfig cfg = table_cfg();
  cfg.grid = {2, 2};
  Stream s = split_stream(cfg.seed, 0, StreamPurpose::kPlacement);
  const Deployment dep = build_deployment(cfg, s);

  REQUIRE(dep.ap_pos.size() == 96);
  REQUIRE(dep.ue_pos.size() == 40);
  const auto rects = cluster_rectangles(cfg);
  std::vector<int> per_cluster(4, 0);
  for (int l = 0; l < 96; ++l) {
    const int m = dep.ap_cluster[l];
    ++per_cluster[m];
    CHECK(rects[m].contains(dep.ap_pos[l].x, dep.ap_pos[l].y));
    CHECK(dep.ap_pos[l].z == 10.0);
  }
  for (int m = 0; m < 4; ++m) CHECK(per_cluster[m] == 24);  // 96 / 4

  // AP indices are cluster-major
  for (int l = 0; l < 96; ++l) CHECK(dep.ap_cluster[l] == l / 24);
}

TEST_CASE("distances include the 10 m height offset") {
  NetworkConfig cfg = table_cfg();
  Stream s = split_stream(3, 0, StreamPurpose::kPlacement);
  const Deployment dep = build_deployment(cfg, s);
  for (int k = 0; k < cfg.num_ues; ++k) {
    for (int l = 0; l < cfg.num_aps; ++l) {
      CHECK(dep.dist(k, l) >= 10.0);
      const double dx = dep.ue_pos[k].x - dep.ap_pos[l].x;
      const double dy = dep.ue_pos[k].y - dep.ap_pos[l].y;
      CHECK(dep.dist(k, l) ==
            doctest::Approx(std::sqrt(dx * dx + dy * dy + 100.0)).epsilon(1e-14));
    }
  }

  // UE directly under an AP: shrink the area until all points coincide.
  NetworkConfig tiny = table_cfg();
  tiny.area_side_m = 1e-6;
  tiny.num_aps = 4;
  tiny.num_ues = 2;
  tiny.grid = {1, 1};
  Stream s2 = split_stream(4, 0, StreamPurpose::kPlacement);
  const Deployment under = build_deployment(tiny, s2);
  for (int k = 0; k < 2; ++k) {
    for (int l = 0; l < 4; ++l) CHECK(under.dist(k, l) == doctest::Approx(10.0).epsilon(1e-12));
  }
}

TEST_CASE("non-dividing cluster grid is rejected") {
  NetworkConfig cfg = table_cfg();
  cfg.grid = {5, 1};  // 96 % 5 != 0
  Stream s = split_stream(1, 0, StreamPurpose::kPlacement);
  CHECK_THROWS_AS(build_deployment(cfg, s), ConfigError);
  CHECK_THROWS_AS(cluster_rectangles(cfg), ConfigError);
}

TEST_CASE("identical (cfg, stream key) gives a bit-identical deployment") {
  NetworkConfig cfg = table_cfg();
  Stream s1 = split_stream(99, 5, StreamPurpose::kPlacement);
  Stream s2 = split_stream(99, 5, StreamPurpose::kPlacement);
  const Deployment a = build_deployment(cfg, s1);
  const Deployment b = build_deployment(cfg, s2);
  REQUIRE(a.ap_pos.size() == b.ap_pos.size());
  for (std::size_t i = 0; i < a.ap_pos.size(); ++i) {
    CHECK(a.ap_pos[i].x == b.ap_pos[i].x);
    CHECK(a.ap_pos[i].y == b.ap_pos[i].y);
  }
  CHECK(a.dist == b.dist);
}

TEST_CASE("UE placement is empirically uniform over the square") {
  NetworkConfig cfg = table_cfg();
  cfg.num_ues = 50;
  cfg.num_aps = 4;
  cfg.grid = {2, 2};
  double sx = 0, sy = 0;
  int n = 0;
  for (int setup = 0; setup < 200; ++setup) {  // 10^4 UE placements
    Stream s = split_stream(17, setup, StreamPurpose::kPlacement);
    const Deployment dep = build_deployment(cfg, s);
    for (const auto& u : dep.ue_pos) {
      sx += u.x;
      sy += u.y;
      ++n;
    }
  }
  CHECK(n == 10000);
  CHECK(std::abs(sx / n - 490.0) < 0.01 * 980.0);
  CHECK(std::abs(sy / n - 490.0) < 0.01 * 980.0);
}
