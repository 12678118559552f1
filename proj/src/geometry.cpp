#include "ohull/geometry.hpp"

#include <algorithm>

namespace ohull {

namespace {

constexpr double kTiny = 1e-12;

void require_finite(const std::vector<Vec2>& vs) {
    for (const Vec2& v : vs)
        if (!std::isfinite(v.x) || !std::isfinite(v.y))
            throw InvalidGeometryError("non-finite polygon coordinate");
}

// Removes consecutive duplicates and collinear middle vertices.
std::vector<Vec2> canonicalize(std::vector<Vec2> vs) {
    // dedupe
    std::vector<Vec2> out;
    for (const Vec2& v : vs) {
        if (out.empty() || (v - out.back()).norm() > kTiny) out.push_back(v);
    }
    while (out.size() > 1 && (out.front() - out.back()).norm() <= kTiny) out.pop_back();
    if (out.size() < 3) return out;
    // drop collinear middles; neighbor tests must use the surviving list, or a
    // run of near-duplicates can take a real corner down with it
    std::vector<Vec2> res;
    for (const Vec2& v : out) {
        while (res.size() >= 2 &&
               std::fabs((res.back() - res[res.size() - 2]).cross(v - res.back())) <=
                   kTiny)
            res.pop_back();
        res.push_back(v);
    }
    bool changed = true;
    while (changed && res.size() >= 3) {
        changed = false;
        size_t m = res.size();
        if (std::fabs((res[m - 1] - res[m - 2]).cross(res[0] - res[m - 1])) <= kTiny) {
            res.pop_back();
            changed = true;
            continue;
        }
        if (std::fabs((res[0] - res[m - 1]).cross(res[1] - res[0])) <= kTiny) {
            res.erase(res.begin());
            changed = true;
        }
    }
    if (res.size() < 3) {
        // fully collinear: keep the two extreme endpoints
        auto cmp = [](const Vec2& a, const Vec2& b) {
            return a.x < b.x || (a.x == b.x && a.y < b.y);
        };
        Vec2 mn = out[0], mx = out[0];
        for (const Vec2& v : out) {
            if (cmp(v, mn)) mn = v;
            if (cmp(mx, v)) mx = v;
        }
        if ((mx - mn).norm() <= kTiny) return {mn};
        return {mn, mx};
    }
    return res;
}

double signed_area2(const std::vector<Vec2>& vs) {
    double s = 0;
    size_t n = vs.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2& a = vs[i];
        const Vec2& b = vs[(i + 1) % n];
        s += a.cross(b);
    }
    return s;
}

double point_segment_dist(const Vec2& p, const Vec2& a, const Vec2& b) {
    Vec2 ab = b - a;
    double len2 = ab.dot(ab);
    if (len2 <= kTiny * kTiny) return (p - a).norm();
    double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return (p - (a + ab * t)).norm();
}

}  // namespace

AxisBox::AxisBox(Point lo_, Point hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    if (lo.size() != hi.size() || lo.empty())
        throw InvalidGeometryError("box endpoints must share a dimension >= 1");
    for (size_t j = 0; j < lo.size(); ++j) {
        if (!std::isfinite(lo[j]) || !std::isfinite(hi[j]) || lo[j] > hi[j])
            throw InvalidGeometryError("box requires lo <= hi with finite coordinates");
    }
}

bool AxisBox::contains(const Point& p) const {
    for (size_t j = 0; j < lo.size(); ++j)
        if (p[j] < lo[j] || p[j] > hi[j]) return false;
    return true;
}

Point AxisBox::corner(const SignVec& v) const {
    Point c(lo.size());
    for (size_t j = 0; j < lo.size(); ++j) c[j] = v[j] > 0 ? hi[j] : lo[j];
    return c;
}

AxisBox AxisBox::unit_cube(int d) {
    return AxisBox(Point(d, 0.0), Point(d, 1.0));
}

std::optional<AxisBox> AxisBox::clipped(const AxisBox& other) const {
    Point l(lo.size()), h(lo.size());
    for (size_t j = 0; j < lo.size(); ++j) {
        l[j] = std::max(lo[j], other.lo[j]);
        h[j] = std::min(hi[j], other.hi[j]);
        if (l[j] > h[j]) return std::nullopt;
    }
    return AxisBox(std::move(l), std::move(h));
}

Halfspace::Halfspace(Point n, double b) : normal(std::move(n)), offset(b) {
    double m = norm(normal);
    if (!std::isfinite(m) || std::fabs(m - 1.0) > 1e-12 || !std::isfinite(offset))
        throw InvalidGeometryError("halfspace normal must be a unit vector");
}

Direction2D Direction2D::from_theta(double theta) {
    constexpr double two_pi = 2 * M_PI;
    theta = std::fmod(theta, two_pi);
    if (theta < 0) theta += two_pi;
    if (theta >= two_pi) theta = 0;
    Direction2D d;
    d.theta = theta;
    d.vec = {std::sin(theta), std::cos(theta)};
    return d;
}

Direction2D Direction2D::from_vec(Vec2 v) {
    double m = v.norm();
    if (m < kTiny) throw InvalidGeometryError("zero direction vector");
    v = v * (1.0 / m);
    double theta = std::atan2(v.x, v.y);
    if (theta < 0) theta += 2 * M_PI;
    Direction2D d;
    d.theta = theta;
    d.vec = v;
    return d;
}

double ConvexPolygon::area() const {
    require_finite(vertices);
    if (degenerate()) return 0.0;
    return 0.5 * std::fabs(signed_area2(vertices));
}

double ConvexPolygon::perimeter() const {
    if (vertices.size() < 2) return 0.0;
    double s = 0;
    size_t n = vertices.size();
    for (size_t i = 0; i < n; ++i) s += (vertices[(i + 1) % n] - vertices[i]).norm();
    return s;
}

bool ConvexPolygon::contains(const Vec2& p, double tol) const {
    if (vertices.empty()) return false;
    if (vertices.size() == 1) return (p - vertices[0]).norm() <= tol;
    if (vertices.size() == 2)
        return point_segment_dist(p, vertices[0], vertices[1]) <= tol;
    size_t n = vertices.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2& a = vertices[i];
        const Vec2& b = vertices[(i + 1) % n];
        if ((b - a).cross(p - a) < -tol) return false;
    }
    return true;
}

double polygon_area(const ConvexPolygon& poly) { return poly.area(); }

ConvexPolygon convex_hull_2d_vec(std::vector<Vec2> pts) {
    require_finite(pts);
    if (pts.empty()) throw EmptyInputError("convex hull of an empty point set");
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Vec2& a, const Vec2& b) {
                              return (a - b).norm() <= kTiny;
                          }),
              pts.end());
    if (pts.size() <= 2) return ConvexPolygon{pts};

    auto build = [&](bool lower) {
        std::vector<Vec2> chain;
        for (size_t k = 0; k < pts.size(); ++k) {
            const Vec2& p = lower ? pts[k] : pts[pts.size() - 1 - k];
            while (chain.size() >= 2 &&
                   (chain.back() - chain[chain.size() - 2])
                           .cross(p - chain.back()) <= kTiny)
                chain.pop_back();
            chain.push_back(p);
        }
        return chain;
    };
    std::vector<Vec2> lower = build(true), upper = build(false);
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    if (lower.size() < 3) return ConvexPolygon{lower};  // all collinear
    return ConvexPolygon{canonicalize(std::move(lower))};
}

ConvexPolygon convex_hull_2d(const std::vector<Point>& points) {
    std::vector<Vec2> v;
    v.reserve(points.size());
    for (const Point& p : points) {
        if (p.size() != 2) throw InvalidGeometryError("convex_hull_2d wants 2-d points");
        v.push_back(to_vec2(p));
    }
    return convex_hull_2d_vec(std::move(v));
}

ConvexPolygon clip_polygon_halfplane(const ConvexPolygon& poly, const Vec2& n, double b) {
    if (poly.vertices.empty()) return poly;
    std::vector<Vec2> out;
    size_t cnt = poly.vertices.size();
    for (size_t i = 0; i < cnt; ++i) {
        const Vec2& p = poly.vertices[i];
        const Vec2& q = poly.vertices[(i + 1) % cnt];
        double dp = n.dot(p) - b;
        double dq = n.dot(q) - b;
        bool pin = dp <= kTiny;
        bool qin = dq <= kTiny;
        if (pin) out.push_back(p);
        if (pin != qin) {
            // tolerance-kept endpoints can put the crossing slightly outside
            double t = std::clamp(dp / (dp - dq), 0.0, 1.0);
            out.push_back(p + (q - p) * t);
        }
    }
    return ConvexPolygon{canonicalize(std::move(out))};
}

ConvexPolygon convex_intersect(const ConvexPolygon& a, const ConvexPolygon& b) {
    require_finite(a.vertices);
    require_finite(b.vertices);
    if (a.vertices.empty() || b.vertices.empty()) return ConvexPolygon{};
    if (b.degenerate()) {
        // zero-area intersection either way; report empty
        return ConvexPolygon{};
    }
    ConvexPolygon cur = a;
    size_t n = b.vertices.size();
    for (size_t i = 0; i < n && !cur.vertices.empty(); ++i) {
        const Vec2& u = b.vertices[i];
        const Vec2& w = b.vertices[(i + 1) % n];
        Vec2 e = w - u;
        // inward normal of CCW edge is (-e.y, e.x); keep <p-u, outward> <= 0
        Vec2 outward{e.y, -e.x};
        double m = outward.norm();
        if (m <= kTiny) continue;
        outward = outward * (1.0 / m);
        cur = clip_polygon_halfplane(cur, outward, outward.dot(u));
    }
    return cur;
}

double symmetric_difference_area(const ConvexPolygon& a, const ConvexPolygon& b) {
    double inter = convex_intersect(a, b).area();
    double v = a.area() + b.area() - 2.0 * inter;
    return v < 0 ? 0.0 : v;
}

ConvexPolygon halfspace_intersection_2d(const std::vector<Halfspace>& halfplanes,
                                        const AxisBox& clip) {
    if (clip.dim() != 2) throw InvalidGeometryError("2-d clip box required");
    ConvexPolygon poly{{{clip.lo[0], clip.lo[1]},
                        {clip.hi[0], clip.lo[1]},
                        {clip.hi[0], clip.hi[1]},
                        {clip.lo[0], clip.hi[1]}}};
    for (const Halfspace& h : halfplanes) {
        if (h.dim() != 2) throw InvalidGeometryError("2-d halfplane required");
        poly = clip_polygon_halfplane(poly, {h.normal[0], h.normal[1]}, h.offset);
        if (poly.vertices.empty()) break;
    }
    return poly;
}

double edge_length_on_line(const ConvexPolygon& poly, const Vec2& n, double b,
                           double tol) {
    // vertices of a convex polygon lying on the support line are contiguous,
    // so the max pairwise distance among them is the edge length
    std::vector<Vec2> on;
    for (const Vec2& v : poly.vertices)
        if (std::fabs(n.dot(v) - b) <= tol) on.push_back(v);
    if (on.size() < 2) return 0.0;
    double best = 0;
    for (size_t i = 0; i < on.size(); ++i)
        for (size_t j = i + 1; j < on.size(); ++j)
            best = std::max(best, (on[i] - on[j]).norm());
    return best;
}

std::pair<double, double> project_extent(const Point& v, const AxisBox& box) {
    double mn = 0, mx = 0;
    for (size_t j = 0; j < v.size(); ++j) {
        if (v[j] >= 0) {
            mn += v[j] * box.lo[j];
            mx += v[j] * box.hi[j];
        } else {
            mn += v[j] * box.hi[j];
            mx += v[j] * box.lo[j];
        }
    }
    return {mn, mx};
}

MonteCarloEstimate monte_carlo_symmdiff(const MembershipFn& member_a,
                                        const MembershipFn& member_b, int d,
                                        uint64_t n_samples, uint64_t seed) {
    if (n_samples == 0) throw EmptyInputError("n_samples must be >= 1");
    uint64_t disagree = 0;
    Point p(d);
    for (uint64_t i = 0; i < n_samples; ++i) {
        for (int j = 0; j < d; ++j) p[j] = counter_uniform(seed, j, i);
        if (member_a(p) != member_b(p)) ++disagree;
    }
    MonteCarloEstimate est;
    est.samples = n_samples;
    est.estimate = static_cast<double>(disagree) / static_cast<double>(n_samples);
    est.std_error =
        std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(n_samples));
    return est;
}

}  // namespace ohull
