#pragma once

#include <array>

#include "ohull/geometry.hpp"

namespace ohull {

// Feasibility of { lambda >= 0, sum lambda = 1, sum lambda*y_j >= t } when
// `inequality`, or with equality constraints otherwise. Dense phase-1 simplex
// with Bland's rule; the tableau has d+1 rows.
bool convex_combination_feasible(const std::vector<Point>& ys, const Point& t,
                                 bool inequality, double eps = kEps);

// Facet description of a 3-d convex hull (incremental construction).
class Hull3D {
  public:
    struct Face {
        std::array<double, 3> n;  // outward unit normal
        double b;                 // plane offset <n,p> = b
    };

    static Hull3D build(const std::vector<Point>& pts);

    bool degenerate() const { return degenerate_; }
    bool contains(const Point& p, double tol = kEps) const;
    const std::vector<Face>& faces() const { return faces_; }

  private:
    bool degenerate_ = true;
    std::vector<Face> faces_;
};

// Membership object for the dominance hull CH_v(C) = (conv(C) + O_{-v}) ∩ [0,1]^d.
// d=2 uses the extreme chain of conv(C) facing v, d=3 the facets of the hull of
// sign-masked corners, general d the dense feasibility test. contains(p, margin)
// asks for a witness x in conv(C) with x_j v_j >= p_j v_j + margin for all j;
// margin < 0 loosens the test, margin > 0 demands clear interior slack.
class DominanceHull {
  public:
    DominanceHull(const std::vector<Point>& corners, SignVec v);

    bool contains(const Point& p, double margin = 0.0) const;
    // The region as a polygon (d = 2 only).
    ConvexPolygon to_polygon() const;
    bool empty() const { return flipped_.empty(); }
    int dim() const { return dim_; }

  private:
    Point flip(const Point& p) const;

    int dim_ = 0;
    SignVec v_;
    std::vector<Point> flipped_;  // v-space corner points, Pareto-pruned
    std::vector<Vec2> chain_;     // d=2: NE chain, decreasing y / increasing x
    double max_x_ = 0, max_y_ = 0;
    Hull3D hull3_;                // d=3: hull of masked corners
    bool use_hull3_ = false;
};

bool dominance_hull_membership(const Point& p, const std::vector<Point>& corners,
                               const SignVec& v);

// Predicate R ∩ (U \ L) != ∅ via the two corner tests, where U and L are the
// dominance hulls of the given corner lists. L-membership demands slack
// max(interior_eps, 1e-9) in every coordinate so that discards are conservative.
bool box_intersects_sandwich(const AxisBox& R, const std::vector<Point>& U_corners,
                             const std::vector<Point>& L_corners, const SignVec& v,
                             double interior_eps = 1e-12);
bool box_intersects_sandwich(const AxisBox& R, const DominanceHull& U,
                             const DominanceHull& L, const SignVec& v,
                             double interior_eps = 1e-12);

// Estimator output: a convex body in [0,1]^d with a total membership test.
class ApproxHull {
  public:
    enum class Repr { Polygon, VertexSet, OrthantFamily };

    static ApproxHull from_polygon(ConvexPolygon poly);
    static ApproxHull from_vertex_set(int dim, std::vector<Point> vertices);
    static ApproxHull from_orthant_family(int dim,
                                          std::vector<std::pair<SignVec, std::vector<Point>>>
                                              orthants);

    int dim() const { return dim_; }
    Repr repr() const { return repr_; }
    // Total and deterministic; false everywhere outside [0,1]^d.
    bool contains(const Point& p, double tol = kEps) const;
    // Exact polygon form, d = 2 only.
    ConvexPolygon to_polygon() const;
    const std::vector<Point>& vertex_set() const { return vertices_; }

  private:
    int dim_ = 2;
    Repr repr_ = Repr::Polygon;
    ConvexPolygon poly_;
    std::vector<Point> vertices_;
    Hull3D hull3_;
    bool use_hull3_ = false;
    std::vector<std::pair<SignVec, DominanceHull>> orthants_;
};

}  // namespace ohull
