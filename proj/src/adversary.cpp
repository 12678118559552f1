#include "ohull/adversary.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ohull {

namespace {

constexpr double kTiny = 1e-12;

struct Run {
    EstimatorResult result;
    std::string transcript;
};

Run run_estimator(const EstimatorFn& est, Backend backend, OracleSession::Mode mode) {
    OracleSession session(std::move(backend), mode);
    Run run{est(session), {}};
    run.transcript = session.transcript();
    return run;
}

std::string diff_transcripts(const std::string& a, const std::string& b) {
    if (a == b) return {};
    std::istringstream sa(a), sb(b);
    std::string la, lb;
    size_t line = 1;
    while (true) {
        bool ga = static_cast<bool>(std::getline(sa, la));
        bool gb = static_cast<bool>(std::getline(sb, lb));
        if (!ga && !gb) return "transcripts differ in length";
        if (!ga || !gb || la != lb) {
            return "line " + std::to_string(line) + ": '" + (ga ? la : "<eof>") +
                   "' vs '" + (gb ? lb : "<eof>") + "'";
        }
        ++line;
    }
}

double sum_coords(const Point& p) {
    double s = 0;
    for (double c : p) s += c;
    return s;
}

// Any point of box ∩ {sum x = level}; requires the box to straddle the level.
Point point_in_box_at_level(const AxisBox& box, double level) {
    Point p = box.lo;
    double remaining = level - sum_coords(p);
    for (size_t j = 0; j < p.size() && remaining > 0; ++j) {
        double take = std::min(box.hi[j] - box.lo[j], remaining);
        p[j] += take;
        remaining -= take;
    }
    return p;
}

bool point_near_box(const Point& p, const AxisBox& box, double margin) {
    for (size_t j = 0; j < p.size(); ++j)
        if (p[j] < box.lo[j] - margin || p[j] > box.hi[j] + margin) return false;
    return true;
}

// Deterministic grid search over {sum x = level} ∩ [0,1]^d for a point clear of
// every forbidden box (with margin, so the point is robustly outside).
Point find_free_point_on_level(int d, double level,
                               const std::vector<AxisBox>& forbidden) {
    uint64_t budget = uint64_t{1} << 20;
    uint64_t tried = 0;
    for (uint64_t k = 3;; k = 2 * k - 1) {
        std::vector<uint64_t> odo(d - 1, 0);
        while (true) {
            Point p(d);
            double s = 0;
            for (int j = 0; j + 1 < d; ++j) {
                p[j] = static_cast<double>(odo[j]) / static_cast<double>(k - 1);
                s += p[j];
            }
            p[d - 1] = level - s;
            if (p[d - 1] >= 0.0 && p[d - 1] <= 1.0) {
                ++tried;
                bool clear = true;
                for (const AxisBox& box : forbidden) {
                    if (point_near_box(p, box, kEps)) { clear = false; break; }
                }
                if (clear) return p;
                if (tried >= budget)
                    throw ConstructionFailedError(
                        "free-point search exhausted: construction precondition "
                        "violated");
            }
            int j = 0;
            for (; j + 1 < d; ++j) {
                if (++odo[j] < k) break;
                odo[j] = 0;
            }
            if (j + 1 == d) break;
        }
    }
}

// (d-1)-measure of the polytope {sum x = level} ∩ [0,1]^d.
double hyperplane_cube_measure(int d, double level) {
    std::vector<Point> verts = hyperplane_cube_vertices(d, level);
    if (verts.size() < 2) return 0.0;
    if (d == 2) {
        Vec2 a = to_vec2(verts[0]), b = to_vec2(verts[1]);
        return (a - b).norm();
    }
    // d == 3: planar polygon area; order vertices around the centroid
    Point centroid(3, 0.0);
    for (const Point& v : verts)
        for (int j = 0; j < 3; ++j) centroid[j] += v[j] / verts.size();
    double inv = 1.0 / std::sqrt(3.0);
    Point n{inv, inv, inv};
    Point e1{1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0};
    Point e2{n[1] * e1[2] - n[2] * e1[1], n[2] * e1[0] - n[0] * e1[2],
             n[0] * e1[1] - n[1] * e1[0]};
    std::vector<std::pair<double, Vec2>> proj;
    for (const Point& v : verts) {
        Point r{v[0] - centroid[0], v[1] - centroid[1], v[2] - centroid[2]};
        Vec2 uv{dot(r, e1), dot(r, e2)};
        proj.emplace_back(std::atan2(uv.y, uv.x), uv);
    }
    std::sort(proj.begin(), proj.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    double s2 = 0;
    for (size_t i = 0; i < proj.size(); ++i)
        s2 += proj[i].second.cross(proj[(i + 1) % proj.size()].second);
    return 0.5 * std::fabs(s2);
}

// Estimator error against a reference hull: exact in 2-d, Monte Carlo above.
double hull_error(const ApproxHull& hull, const MembershipFn& ref_member,
                  const ConvexPolygon* ref_polygon, int d, uint64_t seed) {
    if (d == 2 && ref_polygon)
        return symmetric_difference_area(hull.to_polygon(), *ref_polygon);
    auto member = [&](const Point& p) { return hull.contains(p); };
    return monte_carlo_symmdiff(member, ref_member, d, 1'000'000, seed).estimate;
}

}  // namespace

std::string AdversaryReport::serialize() const {
    std::string out;
    out += "which=" + which + "\n";
    out += "q=" + std::to_string(q) + "\n";
    out += "d=" + std::to_string(d) + "\n";
    out += "c=" + fmt_real(c) + "\n";
    out += "delta=" + fmt_real(delta) + "\n";
    out += "chosen_index=" + std::to_string(chosen_index) + "\n";
    out += "bucket_a=" + fmt_real(bucket_a) + "\n";
    out += "bucket_b=" + fmt_real(bucket_b) + "\n";
    out += std::string("indistinguishable=") + (indistinguishable ? "true" : "false") +
           "\n";
    out += "transcript_diff=" + transcript_diff + "\n";
    out += "hull_gap=" + fmt_real(hull_gap) + "\n";
    out += "forced_error=" + fmt_real(forced_error) + "\n";
    out += "error_first=" + fmt_real(error_first) + "\n";
    out += "error_second=" + fmt_real(error_second) + "\n";
    out += "queries_captured=" + std::to_string(queries_captured) + "\n";
    out += "note=" + note + "\n";
    return out;
}

std::vector<Point> circle_points(uint64_t n) {
    std::vector<Point> pts;
    pts.reserve(n);
    const double r = 0.5;
    for (uint64_t k = 0; k < n; ++k) {
        double theta = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n);
        pts.push_back({0.5 + r * std::cos(theta), 0.5 + r * std::sin(theta)});
    }
    return pts;
}

std::vector<Point> hyperplane_cube_vertices(int d, double level) {
    std::vector<Point> verts;
    // vertices lie on cube edges: d-1 coordinates at 0/1, one free
    for (int free = 0; free < d; ++free) {
        for (uint32_t mask = 0; mask < (uint32_t{1} << (d - 1)); ++mask) {
            Point p(d);
            double fixed_sum = 0;
            int bit = 0;
            for (int j = 0; j < d; ++j) {
                if (j == free) continue;
                p[j] = (mask >> bit) & 1 ? 1.0 : 0.0;
                fixed_sum += p[j];
                ++bit;
            }
            double x = level - fixed_sum;
            if (x < -kTiny || x > 1.0 + kTiny) continue;
            p[free] = std::clamp(x, 0.0, 1.0);
            verts.push_back(std::move(p));
        }
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end(),
                            [](const Point& a, const Point& b) {
                                for (size_t j = 0; j < a.size(); ++j)
                                    if (std::fabs(a[j] - b[j]) > kTiny) return false;
                                return true;
                            }),
                verts.end());
    return verts;
}

std::optional<int> GoodBoxClassifier::classify(const AxisBox& box) const {
    double smin = sum_coords(box.lo);
    double smax = sum_coords(box.hi);
    for (uint64_t i = 1; i <= n; ++i) {
        double level_i = 1.0 + delta * static_cast<double>(i);
        double level_prev = 1.0 + delta * static_cast<double>(i - 1);
        bool meets_i = smin <= level_i && level_i <= smax;
        bool meets_prev = smin <= level_prev && level_prev <= smax;
        if (meets_i && !meets_prev) return static_cast<int>(i);
    }
    return std::nullopt;
}

std::vector<uint64_t> GoodBoxClassifier::counts(const std::vector<AxisBox>& boxes) const {
    std::vector<uint64_t> cnt(n + 1, 0);
    for (const AxisBox& b : boxes) {
        if (auto i = classify(b)) ++cnt[static_cast<size_t>(*i)];
    }
    return cnt;
}

AdversaryReport nonadaptive_orth_adversary(const std::vector<AxisBox>& captured,
                                           uint64_t q, int d, double c,
                                           const EstimatorFn& estimator) {
    if (c < 4.0 * d)
        throw Error("adversary constant c must be at least 4d");
    AdversaryReport rep;
    rep.which = "nao";
    rep.q = q;
    rep.d = d;
    rep.c = c;
    rep.queries_captured = captured.size();

    uint64_t n = ceil_root(q, d) + 1;
    double delta = std::pow(static_cast<double>(q), -1.0 / d) / c;
    rep.delta = delta;

    GoodBoxClassifier cls{d, n, delta};
    std::vector<uint64_t> cnt = cls.counts(captured);
    int best_i = 1;
    for (uint64_t i = 2; i <= n; ++i)
        if (cnt[i] < cnt[static_cast<size_t>(best_i)]) best_i = static_cast<int>(i);
    rep.chosen_index = best_i;

    double level_base = 1.0 + delta * (best_i - 1);
    double level_free = 1.0 + delta * best_i;

    std::vector<Point> z = hyperplane_cube_vertices(d, level_base);
    for (const AxisBox& box : captured) {
        double smin = sum_coords(box.lo), smax = sum_coords(box.hi);
        if (smin <= level_base && level_base <= smax) {
            auto clipped = box.clipped(AxisBox::unit_cube(d));
            const AxisBox& target = clipped ? *clipped : box;
            double tmin = sum_coords(target.lo), tmax = sum_coords(target.hi);
            if (tmin <= level_base && level_base <= tmax)
                z.push_back(point_in_box_at_level(target, level_base));
        }
    }

    std::vector<AxisBox> good;
    for (const AxisBox& box : captured)
        if (cls.classify(box) == best_i) good.push_back(box);
    Point p = find_free_point_on_level(d, level_free, good);

    std::vector<Point> zp = z;
    zp.push_back(p);

    // answers must match box by box, and the full runs must be byte-identical
    bool answers_match = true;
    Backend bz = PointSetBackend(d, z);
    Backend bzp = PointSetBackend(d, zp);
    for (const AxisBox& box : captured) {
        if (backend_box_nonempty(bz, box) != backend_box_nonempty(bzp, box)) {
            answers_match = false;
            break;
        }
    }
    Run run_z = run_estimator(estimator, bz, OracleSession::Mode::NonAdaptive);
    Run run_zp = run_estimator(estimator, bzp, OracleSession::Mode::NonAdaptive);
    rep.transcript_diff = diff_transcripts(run_z.transcript, run_zp.transcript);
    rep.indistinguishable = answers_match && rep.transcript_diff.empty();

    double height = delta / std::sqrt(static_cast<double>(d));
    if (d == 2) {
        rep.hull_gap = convex_hull_2d(zp).area();
    } else {
        rep.hull_gap = hyperplane_cube_measure(d, level_base) * height / d;
    }

    ConvexPolygon ch_z, ch_zp;
    MembershipFn member_z, member_zp;
    if (d == 2) {
        ch_z = convex_hull_2d(z);
        ch_zp = convex_hull_2d(zp);
    } else {
        member_z = [](const Point&) { return false; };  // flat, zero volume
        Hull3D pyramid = Hull3D::build(zp);
        member_zp = [pyramid](const Point& pt) { return pyramid.contains(pt); };
    }
    rep.error_first = hull_error(run_z.result.hull, member_z, &ch_z, d, 17);
    rep.error_second = hull_error(run_z.result.hull, member_zp, &ch_zp, d, 18);
    rep.forced_error = std::max(rep.error_first, rep.error_second);
    return rep;
}

AdversaryReport adaptive_orth_adversary_run(const EstimatorFn& estimator, uint64_t q,
                                            int d, double c) {
    AdversaryReport rep;
    rep.which = "ao";
    rep.q = q;
    rep.d = d;
    rep.c = c;
    rep.note =
        "slab spacing uses delta = q^(-1/(d-1))/c, matching the adaptive error "
        "scaling; the steeper 1/(qc)^(d-1) parameterization is not used";

    double delta = std::pow(static_cast<double>(q), -1.0 / (d - 1)) / c;
    double eps = delta / 100.0;
    rep.delta = delta;
    rep.chosen_index = 1;

    double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
    Point u(d, inv_sqrt_d);
    double patch_offset = (1.0 + eps) * inv_sqrt_d;

    Backend bz = SlabPatchBackend(u, patch_offset);
    OracleSession s1(bz, OracleSession::Mode::Adaptive);
    EstimatorResult r1 = estimator(s1);
    std::string transcript_z = s1.transcript();
    rep.queries_captured = s1.report().total();

    std::vector<AxisBox> empties;
    for (const LedgerEntry& e : s1.entries())
        if (e.kind == QueryKind::Box && !e.bool_answer)
            empties.push_back(std::get<AxisBox>(e.query));

    Point p = find_free_point_on_level(d, 1.0 + delta, empties);

    Backend bzp = SlabPatchBackend(u, patch_offset, p);
    Run run_zp = run_estimator(estimator, bzp, OracleSession::Mode::Adaptive);
    rep.transcript_diff = diff_transcripts(transcript_z, run_zp.transcript);
    rep.indistinguishable = rep.transcript_diff.empty();

    double base = hyperplane_cube_measure(d, 1.0 + eps);
    double height = (delta - eps) * inv_sqrt_d;
    rep.hull_gap = base * height / d;

    std::vector<Point> patch_verts = hyperplane_cube_vertices(d, 1.0 + eps);
    std::vector<Point> zp_verts = patch_verts;
    zp_verts.push_back(p);
    ConvexPolygon ch_z, ch_zp;
    MembershipFn member_z, member_zp;
    if (d == 2) {
        ch_z = convex_hull_2d(patch_verts);
        ch_zp = convex_hull_2d(zp_verts);
    } else {
        member_z = [](const Point&) { return false; };
        Hull3D pyramid = Hull3D::build(zp_verts);
        member_zp = [pyramid](const Point& pt) { return pyramid.contains(pt); };
    }
    rep.error_first = hull_error(r1.hull, member_z, &ch_z, d, 19);
    rep.error_second = hull_error(r1.hull, member_zp, &ch_zp, d, 20);
    rep.forced_error = std::max(rep.error_first, rep.error_second);
    return rep;
}

AdversaryReport nonadaptive_halfplane_adversary(const std::vector<Halfspace>& captured,
                                                uint64_t q,
                                                const EstimatorFn& estimator) {
    if (q < 4) throw Error("halfplane adversary needs q >= 4");
    AdversaryReport rep;
    rep.which = "nah";
    rep.q = q;
    rep.d = 2;
    rep.queries_captured = captured.size();

    double delta = 1.0 / (10.0 * std::sqrt(static_cast<double>(q)));
    rep.delta = delta;

    // A = {i*delta} ∩ [1/3, 2/3], indexed by i
    int64_t i_lo = static_cast<int64_t>(std::ceil(1.0 / 3.0 / delta - kTiny));
    int64_t i_hi = static_cast<int64_t>(std::floor(2.0 / 3.0 / delta + kTiny));
    if (i_hi < i_lo) throw ConstructionFailedError("empty intercept set A");

    std::set<std::pair<int64_t, int64_t>> charged;
    for (const Halfspace& h : captured) {
        if (std::fabs(h.normal[0]) <= kTiny || std::fabs(h.normal[1]) <= kTiny) continue;
        double xi = h.offset / h.normal[0];
        double yi = h.offset / h.normal[1];
        if (xi <= 0 || xi >= 1 || yi <= 0 || yi >= 1) continue;
        auto ia = static_cast<int64_t>(std::floor(xi / delta + kTiny));
        auto ib = static_cast<int64_t>(std::floor(yi / delta + kTiny));
        charged.insert({ia, ib});
    }

    int64_t sel_a = -1, sel_b = -1;
    for (int64_t ia = i_lo; ia <= i_hi && sel_a < 0; ++ia) {
        for (int64_t ib = i_lo; ib <= i_hi; ++ib) {
            if (!charged.count({ia, ib})) {
                sel_a = ia;
                sel_b = ib;
                break;
            }
        }
    }
    if (sel_a < 0)
        throw ConstructionFailedError("no uncharged intercept bucket (|A|^2 <= q?)");
    double a = static_cast<double>(sel_a) * delta;
    double b = static_cast<double>(sel_b) * delta;
    rep.bucket_a = a;
    rep.bucket_b = b;

    Point pstar{a / 2 + delta / 10, b / 2 + delta / 10};
    std::vector<Point> z{{a, 0.0}, {0.0, b}};
    std::vector<Point> zp = z;
    zp.push_back(pstar);

    bool answers_match = true;
    Backend bz = PointSetBackend(2, z);
    Backend bzp = PointSetBackend(2, zp);
    for (const Halfspace& h : captured) {
        if (backend_halfspace_nonempty(bz, h) != backend_halfspace_nonempty(bzp, h)) {
            answers_match = false;
            break;
        }
    }
    Run run_z = run_estimator(estimator, bz, OracleSession::Mode::NonAdaptive);
    Run run_zp = run_estimator(estimator, bzp, OracleSession::Mode::NonAdaptive);
    rep.transcript_diff = diff_transcripts(run_z.transcript, run_zp.transcript);
    rep.indistinguishable = answers_match && rep.transcript_diff.empty();

    ConvexPolygon ch_z = convex_hull_2d(z);
    ConvexPolygon ch_zp = convex_hull_2d(zp);
    rep.hull_gap = ch_zp.area();
    rep.error_first = symmetric_difference_area(run_z.result.hull.to_polygon(), ch_z);
    rep.error_second = symmetric_difference_area(run_z.result.hull.to_polygon(), ch_zp);
    rep.forced_error = std::max(rep.error_first, rep.error_second);
    return rep;
}

AdversaryReport adaptive_halfplane_adversary_run(const EstimatorFn& estimator,
                                                 uint64_t q) {
    if (q < 2) throw Error("adaptive halfplane adversary needs q >= 2");
    AdversaryReport rep;
    rep.which = "ah";
    rep.q = q;
    rep.d = 2;

    std::vector<Point> z = circle_points(4 * q);
    Backend bz = PointSetBackend(2, z);
    OracleSession s1(bz, OracleSession::Mode::Adaptive);
    EstimatorResult r1 = estimator(s1);
    std::string transcript_z = s1.transcript();

    std::vector<std::pair<Point, double>> extremes;
    for (const LedgerEntry& e : s1.entries())
        if (e.kind == QueryKind::Extreme)
            extremes.emplace_back(std::get<Point>(e.query), e.offset_answer);
    rep.queries_captured = extremes.size();
    if (extremes.size() > q)
        throw BudgetError("estimator exceeded the extreme-query budget");

    std::vector<Point> bad;
    for (const Point& pt : z) {
        for (const auto& [v, off] : extremes) {
            if (std::fabs(dot(pt, v) - off) <= kTiny) {
                bad.push_back(pt);
                break;
            }
        }
    }
    if (bad.empty()) throw ConstructionFailedError("no boundary points captured");

    // every answered halfplane must be reproduced by the bad set alone
    bool oracle_match = true;
    for (const auto& [v, off] : extremes) {
        double best = -1e300;
        for (const Point& pt : bad) best = std::max(best, dot(pt, v));
        if (std::fabs(best - off) > kTiny) {
            oracle_match = false;
            break;
        }
    }

    Backend bb = PointSetBackend(2, bad);
    Run run_b = run_estimator(estimator, bb, OracleSession::Mode::Adaptive);
    rep.transcript_diff = diff_transcripts(transcript_z, run_b.transcript);
    rep.indistinguishable = oracle_match && rep.transcript_diff.empty();

    ConvexPolygon ch_z = convex_hull_2d(z);
    ConvexPolygon ch_b = convex_hull_2d(bad);
    rep.hull_gap = ch_z.area() - ch_b.area();
    ConvexPolygon estimate = r1.hull.to_polygon();
    rep.error_first = symmetric_difference_area(estimate, ch_z);
    rep.error_second = symmetric_difference_area(estimate, ch_b);
    rep.forced_error = std::max(rep.error_first, rep.error_second);
    rep.note = "per-sliver area sin(pi/2q)(1-cos(pi/2q)) scales with the squared "
               "disk radius 1/4";
    return rep;
}

}  // namespace ohull
