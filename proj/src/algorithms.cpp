#include "ohull/algorithms.hpp"

#include <algorithm>
#include <chrono>

namespace ohull {

namespace {

constexpr double kTiny = 1e-12;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

QueryCounts counts_from(const LedgerReport& r) {
    return {r.box_queries, r.halfspace_queries, r.extreme_queries};
}

QueryCounts counts_delta(const LedgerReport& after, const QueryCounts& before) {
    return {after.box_queries - before.box, after.halfspace_queries - before.halfspace,
            after.extreme_queries - before.extreme};
}

void require_nonempty_backend(const OracleSession& session) {
    if (const auto* ps = std::get_if<PointSetBackend>(&session.backend())) {
        if (ps->points.empty())
            throw EmptyInputError("estimator needs a nonempty point set");
    }
}

// Dyadic sub-hypercube of [0,1]^d: side 2^-level, lower corner index[j]*2^-level.
struct DyadicBox {
    int level = 0;
    std::vector<uint32_t> index;

    AxisBox to_box() const {
        size_t d = index.size();
        Point lo(d), hi(d);
        for (size_t j = 0; j < d; ++j) {
            lo[j] = std::ldexp(static_cast<double>(index[j]), -level);
            hi[j] = std::ldexp(static_cast<double>(index[j] + 1), -level);
        }
        return AxisBox(std::move(lo), std::move(hi));
    }

    Point corner(const SignVec& v) const {
        size_t d = index.size();
        Point c(d);
        for (size_t j = 0; j < d; ++j)
            c[j] = std::ldexp(static_cast<double>(index[j] + (v[j] > 0 ? 1 : 0)), -level);
        return c;
    }
};

}  // namespace

std::vector<SignVec> all_sign_vectors(int d) {
    std::vector<SignVec> out;
    for (uint32_t mask = 0; mask < (uint32_t{1} << d); ++mask) {
        SignVec v(d);
        for (int j = 0; j < d; ++j) v[j] = (mask >> j) & 1 ? 1 : -1;
        out.push_back(std::move(v));
    }
    return out;
}

EstimatorResult non_adaptive_orthogonal(OracleSession& session, uint64_t q, int d) {
    auto t0 = Clock::now();
    if (q < 1) throw BudgetError("orthogonal estimator needs q >= 1");
    require_nonempty_backend(session);
    QueryCounts before = counts_from(session.report());

    uint64_t r = floor_root(q, d);
    double side = 1.0 / static_cast<double>(r);

    std::vector<size_t> ids;
    std::vector<uint64_t> odo(d, 0);
    while (true) {
        Point lo(d), hi(d);
        for (int j = 0; j < d; ++j) {
            lo[j] = static_cast<double>(odo[j]) * side;
            hi[j] = odo[j] + 1 == r ? 1.0 : static_cast<double>(odo[j] + 1) * side;
        }
        ids.push_back(session.submit_box(AxisBox(std::move(lo), std::move(hi))));
        int j = 0;
        for (; j < d; ++j) {
            if (++odo[j] < r) break;
            odo[j] = 0;
        }
        if (j == d) break;
    }
    session.close_batch();

    std::vector<Point> corners;
    std::vector<uint64_t> cell(d, 0);
    size_t idx = 0;
    while (true) {
        if (session.box_answer(ids[idx])) {
            // all 2^d corners of the cell
            for (uint32_t mask = 0; mask < (uint32_t{1} << d); ++mask) {
                Point c(d);
                for (int j = 0; j < d; ++j) {
                    uint64_t k = cell[j] + ((mask >> j) & 1);
                    c[j] = k == r ? 1.0 : static_cast<double>(k) * side;
                }
                corners.push_back(std::move(c));
            }
        }
        ++idx;
        int j = 0;
        for (; j < d; ++j) {
            if (++cell[j] < r) break;
            cell[j] = 0;
        }
        if (j == d) break;
    }
    if (corners.empty()) throw EmptyInputError("all cells empty: point set is empty");
    std::sort(corners.begin(), corners.end());
    corners.erase(std::unique(corners.begin(), corners.end()), corners.end());

    EstimatorResult res;
    res.hull = ApproxHull::from_vertex_set(d, std::move(corners));
    res.queries = counts_delta(session.report(), before);
    res.iterations = 1;
    res.wall_ms = ms_since(t0);
    return res;
}

std::vector<Point> adaptive_orthogonal_orthant(OracleSession& session, uint64_t q,
                                               const SignVec& v,
                                               const OrthantObserver& observer) {
    const int d = static_cast<int>(v.size());
    if (q < 2) throw BudgetError("adaptive orthogonal estimator needs q >= 2");
    if (d < 2) throw InvalidGeometryError("adaptive orthogonal estimator needs d >= 2");
    require_nonempty_backend(session);
    SignVec neg(v.size());
    for (size_t j = 0; j < v.size(); ++j) neg[j] = -v[j];

    uint64_t t = ceil_log2_div(q, d - 1);
    std::vector<DyadicBox> boxes{DyadicBox{0, std::vector<uint32_t>(v.size(), 0)}};
    std::vector<Point> u_corners;

    for (uint64_t i = 1; i <= t; ++i) {
        std::vector<char> nonempty(boxes.size());
        for (size_t b = 0; b < boxes.size(); ++b)
            nonempty[b] = session.query_box(boxes[b].to_box()) ? 1 : 0;

        std::vector<Point> u_new, l_new;
        for (size_t b = 0; b < boxes.size(); ++b) {
            if (!nonempty[b]) continue;
            u_new.push_back(boxes[b].corner(v));
            l_new.push_back(boxes[b].corner(neg));
        }
        if (u_new.empty()) break;  // cannot happen for a nonempty point set
        u_corners = std::move(u_new);
        if (observer) observer(i, u_corners, l_new);

        DominanceHull U(u_corners, v);
        DominanceHull L(l_new, v);
        std::vector<DyadicBox> next;
        for (const DyadicBox& b : boxes) {
            if (!box_intersects_sandwich(b.to_box(), U, L, v)) continue;
            for (uint32_t mask = 0; mask < (uint32_t{1} << d); ++mask) {
                DyadicBox child{b.level + 1, b.index};
                for (int j = 0; j < d; ++j)
                    child.index[j] = child.index[j] * 2 + ((mask >> j) & 1);
                next.push_back(std::move(child));
            }
        }
        boxes = std::move(next);
        if (boxes.empty()) break;
    }
    return u_corners;
}

EstimatorResult adaptive_orthogonal(OracleSession& session, uint64_t q, int d) {
    auto t0 = Clock::now();
    if (q < 2) throw BudgetError("adaptive orthogonal estimator needs q >= 2");
    if (d < 2) throw InvalidGeometryError("adaptive orthogonal estimator needs d >= 2");
    QueryCounts before = counts_from(session.report());

    std::vector<std::pair<SignVec, std::vector<Point>>> family;
    for (const SignVec& v : all_sign_vectors(d))
        family.emplace_back(v, adaptive_orthogonal_orthant(session, q, v));

    EstimatorResult res;
    res.hull = ApproxHull::from_orthant_family(d, std::move(family));
    res.queries = counts_delta(session.report(), before);
    res.iterations = ceil_log2_div(q, d - 1);
    res.wall_ms = ms_since(t0);
    return res;
}

namespace {

struct DirState {
    Direction2D dir;
    Halfspace half;
};

ExtremeOracleConfig resolve_config(ExtremeMode mode, std::optional<double> delta,
                                   double auto_delta) {
    ExtremeOracleConfig cfg;
    cfg.mode = mode;
    switch (mode) {
        case ExtremeMode::Exact:
            cfg.delta = 0;
            break;
        case ExtremeMode::WorstCaseShift:
        case ExtremeMode::SimulatedNonAdaptive:
        case ExtremeMode::SimulatedAdaptive:
            cfg.delta = delta.value_or(auto_delta);
            break;
    }
    return cfg;
}

ConvexPolygon clip_to_unit_square(const ConvexPolygon& poly) {
    ConvexPolygon cube{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    return convex_intersect(poly, cube);
}

const AxisBox kWorkBox({-1.0, -1.0}, {2.0, 2.0});

}  // namespace

EstimatorResult non_adaptive_halfplane(OracleSession& session, uint64_t q,
                                       ExtremeMode mode, std::optional<double> delta) {
    auto t0 = Clock::now();
    if (session.dim() != 2)
        throw InvalidGeometryError("halfplane estimators are 2-d only");
    if (q < 3)
        throw BudgetError("non-adaptive halfplane estimator needs q >= 3 directions");
    require_nonempty_backend(session);
    // this algorithm's queries are one batch; any simulation must be the
    // non-adaptive one
    if (mode == ExtremeMode::SimulatedAdaptive) mode = ExtremeMode::SimulatedNonAdaptive;
    ExtremeOracleConfig cfg = resolve_config(mode, delta, 1.0 / static_cast<double>(q));
    QueryCounts before = counts_from(session.report());

    std::vector<Direction2D> dirs;
    for (uint64_t i = 1; i <= q; ++i)
        dirs.push_back(Direction2D::from_theta(2.0 * M_PI * static_cast<double>(i) /
                                               static_cast<double>(q)));

    std::vector<Halfspace> answers;
    if (cfg.mode == ExtremeMode::SimulatedNonAdaptive) {
        std::vector<ExtremeSimPlan> plans;
        for (const Direction2D& dir : dirs)
            plans.push_back(extreme_sim_submit(session, to_point(dir.vec), cfg.delta));
        session.close_batch();
        for (const ExtremeSimPlan& plan : plans)
            answers.push_back(extreme_sim_resolve(session, plan));
    } else {
        std::vector<size_t> ids;
        for (const Direction2D& dir : dirs)
            ids.push_back(session.submit_extreme(to_point(dir.vec), cfg));
        session.close_batch();
        for (size_t id : ids) answers.push_back(session.extreme_answer(id));
    }

    ConvexPolygon poly = halfspace_intersection_2d(answers, kWorkBox);
    EstimatorResult res;
    res.hull = ApproxHull::from_polygon(clip_to_unit_square(poly));
    res.queries = counts_delta(session.report(), before);
    res.extreme_requests = q;
    res.iterations = 1;
    res.wall_ms = ms_since(t0);
    return res;
}

EstimatorResult adaptive_halfplane(OracleSession& session, uint64_t q,
                                   ExtremeMode mode, std::optional<double> delta) {
    auto t0 = Clock::now();
    if (session.dim() != 2)
        throw InvalidGeometryError("halfplane estimators are 2-d only");
    if (q < 1) throw BudgetError("adaptive halfplane estimator needs q >= 1");
    require_nonempty_backend(session);
    if (mode == ExtremeMode::SimulatedNonAdaptive) mode = ExtremeMode::SimulatedAdaptive;
    double qd = static_cast<double>(q);
    ExtremeOracleConfig cfg = resolve_config(mode, delta, 1.0 / (qd * qd * qd * qd));
    QueryCounts before = counts_from(session.report());

    const double threshold = 1.0 / (qd * qd);
    std::vector<DirState> states;
    auto ask = [&](const Direction2D& dir) {
        states.push_back({dir, session.query_extreme(to_point(dir.vec), cfg)});
    };
    // (1,0), (0,1), (-1,0), (0,-1) in the (sin,cos) parameterization
    ask(Direction2D::from_theta(M_PI / 2));
    ask(Direction2D::from_theta(0));
    ask(Direction2D::from_theta(3 * M_PI / 2));
    ask(Direction2D::from_theta(M_PI));

    uint64_t iterations = 0;
    ConvexPolygon current;
    const uint64_t iteration_cap = 200;
    while (true) {
        ++iterations;
        if (iterations > iteration_cap)
            throw Error("adaptive halfplane refinement failed to terminate");
        std::sort(states.begin(), states.end(),
                  [](const DirState& a, const DirState& b) {
                      return a.dir.theta < b.dir.theta;
                  });
        std::vector<Halfspace> halves;
        for (const DirState& s : states) halves.push_back(s.half);
        current = halfspace_intersection_2d(halves, kWorkBox);

        std::vector<Direction2D> to_add;
        size_t n = states.size();
        for (size_t i = 0; i < n; ++i) {
            const DirState& prev = states[(i + n - 1) % n];
            const DirState& cur = states[i];
            double gap = cur.dir.theta - prev.dir.theta;
            if (gap <= 0) gap += 2 * M_PI;
            double sigma = edge_length_on_line(current, cur.dir.vec, cur.half.offset);
            if (gap * sigma > threshold) {
                Direction2D bis = Direction2D::from_vec(prev.dir.vec + cur.dir.vec);
                bool dup = false;
                for (const DirState& s : states) {
                    double dd = std::fabs(bis.theta - s.dir.theta);
                    if (std::min(dd, 2 * M_PI - dd) <= kTiny) { dup = true; break; }
                }
                for (const Direction2D& s : to_add) {
                    double dd = std::fabs(bis.theta - s.theta);
                    if (std::min(dd, 2 * M_PI - dd) <= kTiny) { dup = true; break; }
                }
                if (!dup) to_add.push_back(bis);
            }
        }
        if (to_add.empty()) break;
        for (const Direction2D& dir : to_add) ask(dir);
    }

    double min_gap = 2 * M_PI;
    for (size_t i = 0; i < states.size(); ++i) {
        double gap = states[i].dir.theta -
                     states[(i + states.size() - 1) % states.size()].dir.theta;
        if (gap <= 0) gap += 2 * M_PI;
        min_gap = std::min(min_gap, gap);
    }
    if (min_gap < 1.0 / (12.0 * qd * qd) - kTiny)
        throw Error("angular gap invariant violated");

    EstimatorResult res;
    res.hull = ApproxHull::from_polygon(clip_to_unit_square(current));
    res.queries = counts_delta(session.report(), before);
    res.extreme_requests = states.size();
    res.iterations = iterations;
    res.wall_ms = ms_since(t0);
    res.min_angle_gap = min_gap;
    return res;
}

}  // namespace ohull
