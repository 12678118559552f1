#include "ohull/membership.hpp"

#include <algorithm>
#include <cassert>

namespace ohull {

namespace {

constexpr double kTiny = 1e-12;

SignVec negated(const SignVec& v) {
    SignVec r(v.size());
    for (size_t j = 0; j < v.size(); ++j) r[j] = -v[j];
    return r;
}

// Keeps points not dominated (componentwise <=) by another point.
// Sorted sweep: O(m * frontier) with a (d-1)-dimensional frontier check.
std::vector<Point> pareto_prune(std::vector<Point> pts) {
    if (pts.size() <= 1) return pts;
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    });
    std::vector<Point> kept;
    for (const Point& p : pts) {
        bool dominated = false;
        for (const Point& k : kept) {
            bool dom = true;
            for (size_t j = 0; j < p.size(); ++j)
                if (k[j] < p[j]) { dom = false; break; }
            if (dom) { dominated = true; break; }
        }
        if (!dominated) kept.push_back(p);
    }
    return kept;
}

}  // namespace

bool convex_combination_feasible(const std::vector<Point>& ys, const Point& t,
                                 bool inequality, double eps) {
    if (ys.empty()) return false;
    const int d = static_cast<int>(t.size());
    const int m = static_cast<int>(ys.size());
    const int rows = d + 1;
    const int n_surplus = inequality ? d : 0;
    const int n_art = rows;
    const int cols = m + n_surplus + n_art + 1;  // + rhs
    const int rhs = cols - 1;

    std::vector<std::vector<double>> T(rows + 1, std::vector<double>(cols, 0.0));
    for (int k = 0; k < d; ++k) {
        for (int j = 0; j < m; ++j) T[k][j] = ys[j][k];
        if (inequality) T[k][m + k] = -1.0;  // surplus: A*lambda - s = t
        T[k][rhs] = t[k];
    }
    for (int j = 0; j < m; ++j) T[d][j] = 1.0;
    T[d][rhs] = 1.0;

    for (int k = 0; k < rows; ++k) {
        if (T[k][rhs] < 0)
            for (int j = 0; j < cols; ++j) T[k][j] = -T[k][j];
        T[k][m + n_surplus + k] = 1.0;  // artificial
    }

    std::vector<int> basis(rows);
    for (int k = 0; k < rows; ++k) basis[k] = m + n_surplus + k;

    // phase-1 objective: minimize sum of artificials; reduced costs for the
    // artificial basis are the negated column sums
    for (int j = 0; j < cols; ++j) {
        double s = 0;
        for (int k = 0; k < rows; ++k) s += T[k][j];
        T[rows][j] = -s;
    }
    for (int k = 0; k < rows; ++k) T[rows][m + n_surplus + k] = 0.0;

    const double pivot_tol = 1e-11;
    const int max_iters = 200 * (cols + rows);
    for (int iter = 0; iter < max_iters; ++iter) {
        int enter = -1;
        for (int j = 0; j < cols - 1; ++j) {
            if (T[rows][j] < -pivot_tol) { enter = j; break; }  // Bland
        }
        if (enter < 0) break;
        int leave = -1;
        double best_ratio = 0;
        for (int k = 0; k < rows; ++k) {
            if (T[k][enter] > pivot_tol) {
                double ratio = T[k][rhs] / T[k][enter];
                if (leave < 0 || ratio < best_ratio - kTiny ||
                    (ratio < best_ratio + kTiny && basis[k] < basis[leave]))
                {
                    leave = k;
                    best_ratio = ratio;
                }
            }
        }
        if (leave < 0) break;  // cannot happen in phase 1
        double piv = T[leave][enter];
        for (int j = 0; j < cols; ++j) T[leave][j] /= piv;
        for (int k = 0; k <= rows; ++k) {
            if (k == leave) continue;
            double f = T[k][enter];
            if (std::fabs(f) <= kTiny) continue;
            for (int j = 0; j < cols; ++j) T[k][j] -= f * T[leave][j];
        }
        basis[leave] = enter;
    }

    // objective value = sum of artificial basics' rhs
    double infeasibility = 0;
    for (int k = 0; k < rows; ++k)
        if (basis[k] >= m + n_surplus) infeasibility += T[k][rhs];
    return infeasibility <= eps;
}

// ---------------------------------------------------------------------------
// Hull3D

Hull3D Hull3D::build(const std::vector<Point>& input) {
    Hull3D hull;
    std::vector<std::array<double, 3>> pts;
    pts.reserve(input.size());
    for (const Point& p : input) pts.push_back({p[0], p[1], p[2]});
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 4) return hull;

    auto sub = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
        return std::array<double, 3>{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
    };
    auto cross3 = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
        return std::array<double, 3>{a[1] * b[2] - a[2] * b[1],
                                     a[2] * b[0] - a[0] * b[2],
                                     a[0] * b[1] - a[1] * b[0]};
    };
    auto dot3 = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
        return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    };
    auto norm3 = [&](const std::array<double, 3>& a) { return std::sqrt(dot3(a, a)); };

    // seed simplex: far apart, non-degenerate
    size_t i1 = 1;
    for (size_t i = 1; i < pts.size(); ++i)
        if (norm3(sub(pts[i], pts[0])) > norm3(sub(pts[i1], pts[0]))) i1 = i;
    if (norm3(sub(pts[i1], pts[0])) < kTiny) return hull;
    size_t i2 = SIZE_MAX;
    double best = kTiny;
    for (size_t i = 1; i < pts.size(); ++i) {
        if (i == i1) continue;
        double a = norm3(cross3(sub(pts[i1], pts[0]), sub(pts[i], pts[0])));
        if (a > best) { best = a; i2 = i; }
    }
    if (i2 == SIZE_MAX) return hull;
    std::array<double, 3> n0 = cross3(sub(pts[i1], pts[0]), sub(pts[i2], pts[0]));
    size_t i3 = SIZE_MAX;
    best = 1e-9;
    for (size_t i = 1; i < pts.size(); ++i) {
        if (i == i1 || i == i2) continue;
        double h = std::fabs(dot3(n0, sub(pts[i], pts[0]))) / norm3(n0);
        if (h > best) { best = h; i3 = i; }
    }
    if (i3 == SIZE_MAX) return hull;

    std::array<double, 3> interior{};
    for (size_t s : {size_t{0}, i1, i2, i3})
        for (int c = 0; c < 3; ++c) interior[c] += pts[s][c] / 4.0;

    struct IdxFace { size_t a, b, c; std::array<double, 3> n; double off; };
    std::vector<IdxFace> faces;
    auto add_face = [&](size_t a, size_t b, size_t c) {
        std::array<double, 3> n = cross3(sub(pts[b], pts[a]), sub(pts[c], pts[a]));
        double m = norm3(n);
        if (m < 1e-14) return;
        for (double& x : n) x /= m;
        double off = dot3(n, pts[a]);
        if (dot3(n, interior) > off) {  // make outward
            for (double& x : n) x = -x;
            off = -off;
            std::swap(b, c);
        }
        faces.push_back({a, b, c, n, off});
    };
    add_face(0, i1, i2);
    add_face(0, i1, i3);
    add_face(0, i2, i3);
    add_face(i1, i2, i3);

    const double vis_eps = 1e-10;
    for (size_t i = 0; i < pts.size(); ++i) {
        if (i == 0 || i == i1 || i == i2 || i == i3) continue;
        std::vector<size_t> visible;
        for (size_t f = 0; f < faces.size(); ++f)
            if (dot3(faces[f].n, pts[i]) - faces[f].off > vis_eps) visible.push_back(f);
        if (visible.empty()) continue;
        // horizon = undirected edges used by exactly one visible face
        std::vector<std::pair<size_t, size_t>> edges;
        for (size_t f : visible) {
            const IdxFace& fc = faces[f];
            for (auto [u, w] : {std::pair{fc.a, fc.b}, {fc.b, fc.c}, {fc.c, fc.a}}) {
                if (u > w) std::swap(u, w);
                edges.emplace_back(u, w);
            }
        }
        std::sort(edges.begin(), edges.end());
        std::vector<std::pair<size_t, size_t>> horizon;
        for (size_t e = 0; e < edges.size();) {
            size_t e2 = e;
            while (e2 < edges.size() && edges[e2] == edges[e]) ++e2;
            if (e2 - e == 1) horizon.push_back(edges[e]);
            e = e2;
        }
        std::sort(visible.rbegin(), visible.rend());
        for (size_t f : visible) faces.erase(faces.begin() + static_cast<long>(f));
        for (const auto& [u, w] : horizon) add_face(u, w, i);
    }

    hull.degenerate_ = faces.size() < 4;
    for (const IdxFace& f : faces) hull.faces_.push_back({f.n, f.off});
    return hull;
}

bool Hull3D::contains(const Point& p, double tol) const {
    assert(!degenerate_);
    for (const Face& f : faces_) {
        double s = f.n[0] * p[0] + f.n[1] * p[1] + f.n[2] * p[2];
        if (s > f.b + tol) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// DominanceHull

DominanceHull::DominanceHull(const std::vector<Point>& corners, SignVec v)
    : dim_(static_cast<int>(v.size())), v_(std::move(v)) {
    flipped_.reserve(corners.size());
    for (const Point& c : corners) flipped_.push_back(flip(c));
    if (flipped_.empty()) return;

    if (dim_ == 2) {
        ConvexPolygon hull = convex_hull_2d(flipped_);
        const auto& vs = hull.vertices;
        // R: max-x vertex (ties -> max y); T: max-y vertex (ties -> max x)
        size_t ri = 0, ti = 0;
        for (size_t i = 1; i < vs.size(); ++i) {
            if (vs[i].x > vs[ri].x + kTiny ||
                (vs[i].x > vs[ri].x - kTiny && vs[i].y > vs[ri].y))
                ri = i;
            if (vs[i].y > vs[ti].y + kTiny ||
                (vs[i].y > vs[ti].y - kTiny && vs[i].x > vs[ti].x))
                ti = i;
        }
        max_x_ = vs[ri].x;
        max_y_ = vs[ti].y;
        chain_.clear();
        if (vs.size() == 1) {
            chain_ = vs;
        } else if (vs.size() == 2) {
            // a segment faces v only when its endpoints are incomparable;
            // otherwise one endpoint dominates the whole segment
            Vec2 a = vs[0], b = vs[1];
            if (a.x >= b.x - kTiny && a.y >= b.y - kTiny) chain_ = {a};
            else if (b.x >= a.x - kTiny && b.y >= a.y - kTiny) chain_ = {b};
            else {
                chain_ = {a, b};
                std::sort(chain_.begin(), chain_.end(),
                          [](const Vec2& p, const Vec2& q) { return p.x > q.x; });
            }
        } else {
            // CCW walk from R to T traverses exactly the edges facing v
            for (size_t i = ri;; i = (i + 1) % vs.size()) {
                chain_.push_back(vs[i]);
                if (i == ti) break;
            }
        }
    } else if (dim_ == 3) {
        flipped_ = pareto_prune(std::move(flipped_));
        std::vector<Point> masked;
        masked.reserve(flipped_.size() * 8);
        for (const Point& c : flipped_) {
            for (int mask = 0; mask < 8; ++mask) {
                masked.push_back({(mask & 1) ? std::max(c[0], 0.0) : 0.0,
                                  (mask & 2) ? std::max(c[1], 0.0) : 0.0,
                                  (mask & 4) ? std::max(c[2], 0.0) : 0.0});
            }
        }
        hull3_ = Hull3D::build(masked);
        use_hull3_ = !hull3_.degenerate();
    } else {
        flipped_ = pareto_prune(std::move(flipped_));
    }
}

Point DominanceHull::flip(const Point& p) const {
    Point q(p.size());
    for (size_t j = 0; j < p.size(); ++j) q[j] = v_[j] > 0 ? p[j] : 1.0 - p[j];
    return q;
}

bool DominanceHull::contains(const Point& p, double margin) const {
    if (flipped_.empty()) return false;
    Point q = flip(p);
    for (double& c : q) c += margin;

    if (dim_ == 2) {
        if (q[0] > max_x_ + kTiny || q[1] > max_y_ + kTiny) return false;
        Vec2 pt{q[0], q[1]};
        for (size_t i = 0; i + 1 < chain_.size(); ++i) {
            if ((chain_[i + 1] - chain_[i]).cross(pt - chain_[i]) < -kTiny)
                return false;
        }
        return true;
    }
    if (use_hull3_) {
        for (double& c : q) c = std::max(c, 0.0);  // witnesses have x >= 0
        return hull3_.contains(q, kTiny);
    }
    return convex_combination_feasible(flipped_, q, /*inequality=*/true, kEps);
}

ConvexPolygon DominanceHull::to_polygon() const {
    if (dim_ != 2) throw InvalidGeometryError("dominance polygon is 2-d only");
    if (flipped_.empty()) return ConvexPolygon{};
    std::vector<Vec2> vs;
    vs.emplace_back(0, 0);
    vs.emplace_back(max_x_, 0);
    for (const Vec2& c : chain_) vs.push_back(c);  // max-x vertex up to max-y vertex
    vs.emplace_back(0, max_y_);
    // back to original coordinates
    for (Vec2& p : vs) {
        if (v_[0] < 0) p.x = 1.0 - p.x;
        if (v_[1] < 0) p.y = 1.0 - p.y;
    }
    ConvexPolygon poly{std::move(vs)};
    double s2 = 0;
    for (size_t i = 0; i < poly.vertices.size(); ++i)
        s2 += poly.vertices[i].cross(poly.vertices[(i + 1) % poly.vertices.size()]);
    if (s2 < 0) std::reverse(poly.vertices.begin(), poly.vertices.end());
    // reuse the clipper's canonicalization by clipping against the cube
    ConvexPolygon cube{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    return convex_intersect(poly, cube);
}

bool dominance_hull_membership(const Point& p, const std::vector<Point>& corners,
                               const SignVec& v) {
    if (corners.empty()) throw EmptyInputError("dominance hull needs corners");
    return DominanceHull(corners, v).contains(p, 0.0);
}

bool box_intersects_sandwich(const AxisBox& R, const DominanceHull& U,
                             const DominanceHull& L, const SignVec& v,
                             double interior_eps) {
    Point cm = R.corner(negated(v));
    if (!U.contains(cm, -kEps)) return false;
    if (L.empty()) return true;
    Point cp = R.corner(v);
    return !L.contains(cp, std::max(interior_eps, kEps));
}

bool box_intersects_sandwich(const AxisBox& R, const std::vector<Point>& U_corners,
                             const std::vector<Point>& L_corners, const SignVec& v,
                             double interior_eps) {
    if (U_corners.empty()) throw EmptyInputError("sandwich test needs U corners");
    DominanceHull U(U_corners, v), L(L_corners, v);
    return box_intersects_sandwich(R, U, L, v, interior_eps);
}

// ---------------------------------------------------------------------------
// ApproxHull

ApproxHull ApproxHull::from_polygon(ConvexPolygon poly) {
    ApproxHull h;
    h.dim_ = 2;
    h.repr_ = Repr::Polygon;
    h.poly_ = std::move(poly);
    return h;
}

ApproxHull ApproxHull::from_vertex_set(int dim, std::vector<Point> vertices) {
    if (vertices.empty()) throw EmptyInputError("vertex set hull needs vertices");
    ApproxHull h;
    h.dim_ = dim;
    h.repr_ = Repr::VertexSet;
    h.vertices_ = std::move(vertices);
    if (dim == 2) {
        h.poly_ = convex_hull_2d(h.vertices_);
    } else if (dim == 3) {
        h.hull3_ = Hull3D::build(h.vertices_);
        h.use_hull3_ = !h.hull3_.degenerate();
    }
    return h;
}

ApproxHull ApproxHull::from_orthant_family(
    int dim, std::vector<std::pair<SignVec, std::vector<Point>>> orthants) {
    ApproxHull h;
    h.dim_ = dim;
    h.repr_ = Repr::OrthantFamily;
    for (auto& [v, corners] : orthants)
        h.orthants_.emplace_back(v, DominanceHull(corners, v));
    return h;
}

bool ApproxHull::contains(const Point& p, double tol) const {
    if (static_cast<int>(p.size()) != dim_) return false;
    if (!all_finite(p) || !in_unit_cube(p)) return false;
    switch (repr_) {
        case Repr::Polygon:
            return poly_.contains(to_vec2(p), tol);
        case Repr::VertexSet:
            if (dim_ == 2) return poly_.contains(to_vec2(p), tol);
            if (use_hull3_) return hull3_.contains(p, tol);
            return convex_combination_feasible(vertices_, p, /*inequality=*/false, tol);
        case Repr::OrthantFamily:
            for (const auto& [v, hull] : orthants_)
                if (!hull.contains(p, -tol)) return false;
            return true;
    }
    return false;
}

ConvexPolygon ApproxHull::to_polygon() const {
    if (dim_ != 2) throw InvalidGeometryError("polygon form is 2-d only");
    switch (repr_) {
        case Repr::Polygon:
        case Repr::VertexSet:
            return poly_;
        case Repr::OrthantFamily: {
            ConvexPolygon acc{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
            for (const auto& [v, hull] : orthants_)
                acc = convex_intersect(acc, hull.to_polygon());
            return acc;
        }
    }
    return ConvexPolygon{};
}

}  // namespace ohull
