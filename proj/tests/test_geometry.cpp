#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "ohull/geometry.hpp"

using namespace ohull;

namespace {

ConvexPolygon unit_square() {
    return ConvexPolygon{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
}

ConvexPolygon rect(double x0, double y0, double x1, double y1) {
    return ConvexPolygon{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
}

// deterministic random convex polygon: hull of 4..11 counter-rng points
ConvexPolygon random_polygon(uint64_t seed, uint64_t trial) {
    for (uint64_t attempt = 0;; ++attempt) {
        uint64_t n = 4 + (splitmix64(hash_combine(seed, trial * 131 + attempt)) % 8);
        std::vector<Point> pts;
        for (uint64_t i = 0; i < n; ++i) {
            pts.push_back({counter_uniform(seed, 2 * (trial * 503 + attempt), i),
                           counter_uniform(seed, 2 * (trial * 503 + attempt) + 1, i)});
        }
        ConvexPolygon hull = convex_hull_2d(pts);
        if (hull.vertices.size() >= 3) return hull;
    }
}

// brute-force vertex enumeration: intersect all boundary pairs, keep feasible
double halfplane_intersection_area_brute(const std::vector<Halfspace>& hs) {
    std::vector<Vec2> candidates;
    for (size_t i = 0; i < hs.size(); ++i) {
        for (size_t j = i + 1; j < hs.size(); ++j) {
            Vec2 n1{hs[i].normal[0], hs[i].normal[1]};
            Vec2 n2{hs[j].normal[0], hs[j].normal[1]};
            double det = n1.x * n2.y - n1.y * n2.x;
            if (std::fabs(det) < 1e-12) continue;
            Vec2 p{(hs[i].offset * n2.y - hs[j].offset * n1.y) / det,
                   (n1.x * hs[j].offset - n2.x * hs[i].offset) / det};
            bool feasible = true;
            for (const Halfspace& h : hs) {
                if (h.normal[0] * p.x + h.normal[1] * p.y > h.offset + 1e-9) {
                    feasible = false;
                    break;
                }
            }
            if (feasible) candidates.push_back(p);
        }
    }
    std::vector<Point> pts;
    for (const Vec2& v : candidates) pts.push_back({v.x, v.y});
    if (pts.size() < 3) return 0.0;
    return convex_hull_2d(pts).area();
}

}  // namespace

TEST_CASE("polygon area basics") {
    CHECK(polygon_area(unit_square()) == doctest::Approx(1.0));
    ConvexPolygon tri{{{0, 0}, {1, 0}, {0, 1}}};
    CHECK(polygon_area(tri) == doctest::Approx(0.5));
    ConvexPolygon seg{{{0.2, 0.2}, {0.8, 0.8}}};
    CHECK(polygon_area(seg) == 0.0);
    CHECK(polygon_area(ConvexPolygon{}) == 0.0);

    ConvexPolygon bad{{{0, 0}, {1, 0}, {0, std::nan("")}}};
    CHECK_THROWS_AS(polygon_area(bad), InvalidGeometryError);
}

TEST_CASE("convex intersection") {
    ConvexPolygon a = unit_square();
    ConvexPolygon b = rect(0.5, 0.0, 1.5, 1.0);
    CHECK(convex_intersect(a, b).area() == doctest::Approx(0.5).epsilon(1e-9));

    ConvexPolygon self = convex_intersect(a, a);
    CHECK(self.area() == doctest::Approx(1.0).epsilon(1e-9));

    ConvexPolygon far = rect(2.0, 2.0, 3.0, 3.0);
    CHECK(convex_intersect(a, far).area() == 0.0);
}

TEST_CASE("intersection is contained in both inputs") {
    for (uint64_t t = 0; t < 40; ++t) {
        ConvexPolygon a = random_polygon(11, t);
        ConvexPolygon b = random_polygon(12, t);
        ConvexPolygon inter = convex_intersect(a, b);
        for (const Vec2& v : inter.vertices) {
            CHECK(a.contains(v, 1e-9));
            CHECK(b.contains(v, 1e-9));
        }
    }
}

TEST_CASE("symmetric difference") {
    CHECK(symmetric_difference_area(unit_square(), unit_square()) == 0.0);
    CHECK(symmetric_difference_area(unit_square(), rect(0, 0, 0.5, 1)) ==
          doctest::Approx(0.5).epsilon(1e-9));

    for (uint64_t t = 0; t < 30; ++t) {
        ConvexPolygon a = random_polygon(21, t);
        ConvexPolygon b = random_polygon(22, t);
        double ab = symmetric_difference_area(a, b);
        double ba = symmetric_difference_area(b, a);
        CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
        CHECK(ab >= 0.0);
        CHECK(symmetric_difference_area(a, a) == 0.0);
    }
}

TEST_CASE("symmetric difference agrees with monte carlo") {
    int ok = 0;
    const int trials = 12;
    for (uint64_t t = 0; t < trials; ++t) {
        ConvexPolygon a = random_polygon(31, t);
        ConvexPolygon b = random_polygon(32, t);
        double exact = symmetric_difference_area(a, b);
        auto ma = [&](const Point& p) { return a.contains(to_vec2(p), 1e-9); };
        auto mb = [&](const Point& p) { return b.contains(to_vec2(p), 1e-9); };
        MonteCarloEstimate mc = monte_carlo_symmdiff(ma, mb, 2, 200'000, 900 + t);
        double band = 5.0 * std::max(mc.std_error, 1e-6);
        if (std::fabs(mc.estimate - exact) <= band) ++ok;
    }
    CHECK(ok >= trials - 1);
}

TEST_CASE("halfspace intersection 2d") {
    AxisBox cube = AxisBox::unit_cube(2);
    ConvexPolygon half =
        halfspace_intersection_2d({Halfspace({1.0, 0.0}, 0.5)}, cube);
    CHECK(half.area() == doctest::Approx(0.5).epsilon(1e-9));

    // four halfplanes meeting at the center leave a single point
    std::vector<Halfspace> pin{Halfspace({1.0, 0.0}, 0.5), Halfspace({-1.0, 0.0}, -0.5),
                               Halfspace({0.0, 1.0}, 0.5), Halfspace({0.0, -1.0}, -0.5)};
    ConvexPolygon pt = halfspace_intersection_2d(pin, cube);
    CHECK(pt.area() == 0.0);
    CHECK(!pt.vertices.empty());

    // empty halfplane list: the clip box itself
    CHECK(halfspace_intersection_2d({}, cube).area() == doctest::Approx(1.0));

    // three tangents at 120 degrees: equilateral triangle around the incircle
    std::vector<Halfspace> tri;
    const double r = 0.2;
    for (int k = 0; k < 3; ++k) {
        double ang = M_PI / 2 + 2.0 * M_PI * k / 3.0;
        Point n{std::cos(ang), std::sin(ang)};
        tri.push_back(Halfspace(n, n[0] * 0.5 + n[1] * 0.5 + r));
    }
    ConvexPolygon tpoly =
        halfspace_intersection_2d(tri, AxisBox({-2.0, -2.0}, {3.0, 3.0}));
    double expected = halfplane_intersection_area_brute(tri);
    CHECK(expected > 0.0);
    CHECK(tpoly.area() == doctest::Approx(expected).epsilon(1e-9));
    CHECK(tpoly.area() == doctest::Approx(3.0 * std::sqrt(3.0) * r * r).epsilon(1e-9));
}

TEST_CASE("convex hull 2d") {
    ConvexPolygon sq = convex_hull_2d(
        {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}, {0.5, 0.5}});
    CHECK(sq.vertices.size() == 4);
    CHECK(sq.area() == doctest::Approx(1.0));

    ConvexPolygon single = convex_hull_2d({{0.3, 0.4}});
    CHECK(single.vertices.size() == 1);
    CHECK(single.area() == 0.0);

    std::vector<Point> octagon;
    const double r = 0.5;
    for (int k = 0; k < 8; ++k) {
        double ang = 2.0 * M_PI * k / 8.0;
        octagon.push_back({0.5 + r * std::cos(ang), 0.5 + r * std::sin(ang)});
    }
    ConvexPolygon oct = convex_hull_2d(octagon);
    CHECK(oct.vertices.size() == 8);
    CHECK(oct.area() == doctest::Approx(2.0 * r * r * std::sqrt(2.0)).epsilon(1e-12));

    CHECK_THROWS_AS(convex_hull_2d({}), EmptyInputError);
}

TEST_CASE("edge length on a support line") {
    ConvexPolygon sq = unit_square();
    CHECK(edge_length_on_line(sq, {1, 0}, 1.0) == doctest::Approx(1.0));
    CHECK(edge_length_on_line(sq, {0, 1}, 1.0) == doctest::Approx(1.0));
    CHECK(edge_length_on_line(sq, {1, 0}, 0.7) == 0.0);
}

TEST_CASE("project extent") {
    AxisBox cube = AxisBox::unit_cube(2);
    auto [a0, a1] = project_extent({1.0, 0.0}, cube);
    CHECK(a0 == 0.0);
    CHECK(a1 == 1.0);
    double s = std::sqrt(2.0) / 2;
    auto [b0, b1] = project_extent({s, s}, cube);
    CHECK(b0 == doctest::Approx(0.0));
    CHECK(b1 == doctest::Approx(std::sqrt(2.0)));
    auto [c0, c1] = project_extent({-1.0, 0.0}, cube);
    CHECK(c0 == -1.0);
    CHECK(c1 == 0.0);
}

TEST_CASE("monte carlo symmetric difference") {
    auto half_a = [](const Point& p) { return p[0] <= 0.5; };
    auto half_b = [](const Point& p) { return p[0] >= 0.5; };
    MonteCarloEstimate same = monte_carlo_symmdiff(half_a, half_a, 2, 10'000, 5);
    CHECK(same.estimate == 0.0);

    MonteCarloEstimate split = monte_carlo_symmdiff(half_a, half_b, 2, 1'000'000, 5);
    CHECK(std::fabs(split.estimate - 1.0) <= 4.0 * std::max(split.std_error, 1e-9));

    auto cube_all = [](const Point&) { return true; };
    auto half_cube = [](const Point& p) { return p[2] <= 0.5; };
    MonteCarloEstimate half = monte_carlo_symmdiff(cube_all, half_cube, 3, 1'000'000, 7);
    CHECK(std::fabs(half.estimate - 0.5) <= 4.0 * half.std_error);

    MonteCarloEstimate again = monte_carlo_symmdiff(cube_all, half_cube, 3, 100'000, 7);
    MonteCarloEstimate again2 = monte_carlo_symmdiff(cube_all, half_cube, 3, 100'000, 7);
    CHECK(again.estimate == again2.estimate);
}

TEST_CASE("direction parameterization") {
    Direction2D east = Direction2D::from_theta(M_PI / 2);
    CHECK(east.vec.x == doctest::Approx(1.0));
    CHECK(east.vec.y == doctest::Approx(0.0).epsilon(1e-12));

    Direction2D north = Direction2D::from_theta(0);
    CHECK(north.vec.x == 0.0);
    CHECK(north.vec.y == 1.0);

    for (double t : {0.3, 1.7, 3.9, 6.1}) {
        Direction2D d = Direction2D::from_theta(t);
        Direction2D back = Direction2D::from_vec(d.vec);
        CHECK(back.theta == doctest::Approx(t).epsilon(1e-12));
    }
}
