#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "ohull/common.hpp"

namespace ohull {

struct Vec2 {
    double x = 0, y = 0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::sqrt(x * x + y * y); }
};

inline Vec2 to_vec2(const Point& p) { return {p[0], p[1]}; }
inline Point to_point(const Vec2& v) { return {v.x, v.y}; }

// Closed axis-parallel box, the orthogonal query range.
struct AxisBox {
    Point lo, hi;

    AxisBox() = default;
    AxisBox(Point lo_, Point hi_);

    int dim() const { return static_cast<int>(lo.size()); }
    bool contains(const Point& p) const;
    // Corner in the direction of the sign vector v.
    Point corner(const SignVec& v) const;
    static AxisBox unit_cube(int d);
    // Intersection with another box; nullopt if empty.
    std::optional<AxisBox> clipped(const AxisBox& other) const;
};

// Closed halfspace {p : <p, normal> <= offset} with unit normal.
struct Halfspace {
    Point normal;
    double offset = 0;

    Halfspace() = default;
    Halfspace(Point n, double b);

    int dim() const { return static_cast<int>(normal.size()); }
    bool contains(const Point& p) const { return dot(p, normal) <= offset; }
};

// Unit direction on S^1 parameterized as (sin theta, cos theta), theta in [0, 2pi).
// Increasing theta sweeps clockwise in the usual x-right / y-up picture.
struct Direction2D {
    double theta = 0;
    Vec2 vec{0, 1};

    static Direction2D from_theta(double theta);
    static Direction2D from_vec(Vec2 v);
};

// Convex polygon, CCW vertex order, no three consecutive collinear.
// Fewer than 3 vertices denotes a degenerate (zero-area) set.
struct ConvexPolygon {
    std::vector<Vec2> vertices;

    bool degenerate() const { return vertices.size() < 3; }
    double area() const;
    double perimeter() const;
    bool contains(const Vec2& p, double tol = kEps) const;
};

double polygon_area(const ConvexPolygon& poly);

ConvexPolygon convex_hull_2d(const std::vector<Point>& points);
ConvexPolygon convex_hull_2d_vec(std::vector<Vec2> points);

ConvexPolygon convex_intersect(const ConvexPolygon& a, const ConvexPolygon& b);

double symmetric_difference_area(const ConvexPolygon& a, const ConvexPolygon& b);

// Intersection of closed halfplanes clipped to a bounding box.
// An empty halfplane list yields the clip box itself.
ConvexPolygon halfspace_intersection_2d(const std::vector<Halfspace>& halfplanes,
                                        const AxisBox& clip);

// Clips a polygon to {p : <p,n> <= b}.
ConvexPolygon clip_polygon_halfplane(const ConvexPolygon& poly, const Vec2& n, double b);

// Length of the polygon edge supported by the boundary line <p,n> = b
// (0 when the polygon misses the line). Collinearity tolerance `tol`.
double edge_length_on_line(const ConvexPolygon& poly, const Vec2& n, double b,
                           double tol = kEps);

// (min, max) of <p, v> over a box.
std::pair<double, double> project_extent(const Point& v, const AxisBox& box);

using MembershipFn = std::function<bool(const Point&)>;

struct MonteCarloEstimate {
    double estimate = 0;
    double std_error = 0;
    uint64_t samples = 0;
};

// Volume of the pointwise disagreement region of two membership predicates
// over [0,1]^d. Deterministic for a fixed seed, order-independent.
MonteCarloEstimate monte_carlo_symmdiff(const MembershipFn& member_a,
                                        const MembershipFn& member_b, int d,
                                        uint64_t n_samples, uint64_t seed);

}  // namespace ohull
