#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ohull/adversary.hpp"
#include "ohull/harness.hpp"

using namespace ohull;

namespace {

AxisBox rand_box(uint64_t seed, uint64_t t, int d) {
    Point lo(d), hi(d);
    for (int j = 0; j < d; ++j) {
        double a = counter_uniform(seed, 2 * j, t);
        double b = counter_uniform(seed, 2 * j + 1, t);
        lo[j] = std::min(a, b);
        hi[j] = std::max(a, b);
    }
    return AxisBox(lo, hi);
}

double shoelace(const std::vector<Point>& pts) {
    double s = 0;
    size_t n = pts.size();
    for (size_t i = 0; i < n; ++i) {
        const Point& a = pts[i];
        const Point& b = pts[(i + 1) % n];
        s += a[0] * b[1] - a[1] * b[0];
    }
    return 0.5 * std::fabs(s);
}

}  // namespace

TEST_CASE("good boxes belong to at most one index") {
    GoodBoxClassifier cls{2, 9, 0.03};
    for (uint64_t t = 0; t < 400; ++t) {
        AxisBox box = rand_box(301, t, 2);
        double smin = box.lo[0] + box.lo[1];
        double smax = box.hi[0] + box.hi[1];
        int manual = 0;
        for (uint64_t i = 1; i <= cls.n; ++i) {
            double li = 1.0 + cls.delta * i;
            double lp = 1.0 + cls.delta * (i - 1);
            bool meets_i = smin <= li && li <= smax;
            bool meets_p = smin <= lp && lp <= smax;
            if (meets_i && !meets_p) ++manual;
        }
        CHECK(manual <= 1);
        auto got = cls.classify(box);
        CHECK((got.has_value() ? 1 : 0) == manual);
    }
}

TEST_CASE("non-adaptive orthogonal adversary, empty query set geometry") {
    EstimatorFn est = [](OracleSession& s) { return non_adaptive_orthogonal(s, 4, 2); };
    AdversaryReport rep = nonadaptive_orth_adversary({}, 4, 2, 8.0, est);
    CHECK(rep.chosen_index == 1);
    double delta = 1.0 / (2.0 * 8.0);  // q^{-1/2}/c at q = 4
    CHECK(rep.delta == doctest::Approx(delta).epsilon(1e-12));
    // base segment x+y=1 from (1,0) to (0,1); apex anywhere on x+y=1+delta
    // gives area delta/2 exactly
    CHECK(rep.hull_gap == doctest::Approx(delta / 2).epsilon(1e-9));
    // the adversary was built against an empty capture, so the estimator's
    // real queries are allowed to distinguish the pair
    CHECK(rep.forced_error >= rep.hull_gap / 2 - 1e-9);
}

TEST_CASE("non-adaptive orthogonal adversary defeats its estimator") {
    for (uint64_t q : {16ULL, 64ULL}) {
        AdversaryDriveResult res = adversary_drive("nao", q, 2, 8.0);
        CHECK(res.report.indistinguishable);
        CHECK(res.report.transcript_diff.empty());
        CHECK(res.report.hull_gap > 0.0);
        CHECK(res.report.hull_gap >= 0.05 / std::sqrt(static_cast<double>(q)));
        CHECK(res.report.forced_error >= res.report.hull_gap / 2 - 1e-9);
    }
}

TEST_CASE("adversary verdict is false for a mismatched capture") {
    // construction built against no queries, but the estimator does query
    EstimatorFn est = [](OracleSession& s) { return non_adaptive_orthogonal(s, 4, 2); };
    AdversaryReport rep = nonadaptive_orth_adversary({}, 4, 2, 8.0, est);
    CHECK(!rep.indistinguishable);
    CHECK(!rep.transcript_diff.empty());
}

TEST_CASE("adaptive orthogonal adversary") {
    for (uint64_t q : {16ULL, 64ULL}) {
        AdversaryDriveResult res = adversary_drive("ao", q, 2, 8.0);
        const AdversaryReport& rep = res.report;
        CHECK(rep.indistinguishable);
        double delta = 1.0 / (8.0 * static_cast<double>(q));
        double eps = delta / 100.0;
        CHECK(rep.delta == doctest::Approx(delta).epsilon(1e-12));
        // exact triangle: base |H_0' ∩ cube| times euclidean height over 2
        double expect = (1.0 - eps) * (delta - eps) / 2.0;
        CHECK(rep.hull_gap == doctest::Approx(expect).epsilon(1e-9));
        CHECK(rep.forced_error >= 0.01 / static_cast<double>(q));
        CHECK(rep.forced_error >= rep.hull_gap / 2 - 1e-9);
        CHECK(!rep.note.empty());
    }
}

TEST_CASE("non-adaptive halfplane adversary arithmetic") {
    // q = 4: delta = 0.05 and A = {0.35, 0.40, ..., 0.65}
    EstimatorFn est = [](OracleSession& s) {
        return non_adaptive_halfplane(s, 3, ExtremeMode::SimulatedNonAdaptive);
    };
    AdversaryReport rep = nonadaptive_halfplane_adversary({}, 4, est);
    CHECK(rep.delta == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(rep.bucket_a >= 0.35 - 1e-12);
    CHECK(rep.bucket_b >= 0.35 - 1e-12);
    CHECK(rep.bucket_a <= 0.65 + 1e-12);
    // empty capture charges nothing: the first bucket is (0.35, 0.35) and
    // p* = (a/2 + delta/10, b/2 + delta/10) = (0.18, 0.18)
    CHECK(rep.bucket_a == doctest::Approx(0.35).epsilon(1e-12));
    CHECK(rep.bucket_b == doctest::Approx(0.35).epsilon(1e-12));
    double a = rep.bucket_a, b = rep.bucket_b, d = rep.delta;
    std::vector<Point> tri{{a, 0.0}, {0.0, b}, {a / 2 + d / 10, b / 2 + d / 10}};
    CHECK(tri[2][0] == doctest::Approx(0.18).epsilon(1e-12));
    CHECK(rep.hull_gap == doctest::Approx(shoelace(tri)).epsilon(1e-9));
    CHECK(rep.hull_gap > 0.0);
}

TEST_CASE("non-adaptive halfplane adversary defeats its estimator") {
    for (uint64_t q : {16ULL, 64ULL}) {
        AdversaryDriveResult res = adversary_drive("nah", q, 2, 8.0);
        CHECK(res.report.indistinguishable);
        CHECK(res.report.hull_gap > 0.0);
        CHECK(res.report.forced_error >= res.report.hull_gap / 2 - 1e-9);
    }
}

TEST_CASE("adaptive halfplane adversary with a two-query estimator") {
    // q = 2: 8 circle points, at most 4 of them end up bad
    EstimatorFn est = [](OracleSession& s) {
        ExtremeOracleConfig cfg{0.0, ExtremeMode::Exact};
        s.query_extreme({1.0, 0.0}, cfg);
        s.query_extreme({0.0, 1.0}, cfg);
        EstimatorResult r;
        r.hull = ApproxHull::from_polygon(
            ConvexPolygon{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}});
        r.extreme_requests = 2;
        return r;
    };
    AdversaryReport rep = adaptive_halfplane_adversary_run(est, 2);
    CHECK(rep.indistinguishable);
    CHECK(rep.queries_captured == 2);
    std::vector<Point> z = circle_points(8);
    // the two axis queries each touch exactly one circle point
    std::vector<Point> bad{z[0], z[2]};
    double expect = convex_hull_2d(z).area() - convex_hull_2d(bad).area();
    CHECK(rep.hull_gap == doctest::Approx(expect).epsilon(1e-9));
    // per-sliver area of the octagon: sin(pi/4)(1-cos(pi/4)) r^2
    double eta = std::sin(M_PI / 4) * (1.0 - std::cos(M_PI / 4)) * 0.25;
    CHECK(rep.hull_gap >= eta - 1e-12);
}

TEST_CASE("adaptive halfplane adversary enforces the budget") {
    EstimatorFn greedy = [](OracleSession& s) {
        ExtremeOracleConfig cfg{0.0, ExtremeMode::Exact};
        for (int k = 0; k < 5; ++k) {
            double ang = 2.0 * M_PI * k / 5.0;
            s.query_extreme({std::sin(ang), std::cos(ang)}, cfg);
        }
        EstimatorResult r;
        r.hull = ApproxHull::from_polygon(
            ConvexPolygon{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}});
        r.extreme_requests = 5;
        return r;
    };
    CHECK_THROWS_AS(adaptive_halfplane_adversary_run(greedy, 2), BudgetError);
}

TEST_CASE("adaptive halfplane adversary defeats the refinement estimator") {
    for (uint64_t q : {16ULL, 64ULL}) {
        AdversaryDriveResult res = adversary_drive("ah", q, 2, 8.0);
        CHECK(res.report.indistinguishable);
        CHECK(res.report.queries_captured <= q);
        CHECK(res.report.hull_gap > 0.0);
        CHECK(res.report.hull_gap >= 0.001 / (static_cast<double>(q) * q));
        CHECK(res.report.forced_error >= res.report.hull_gap / 2 - 1e-9);
    }
}

TEST_CASE("report serialization carries stable keys") {
    AdversaryDriveResult res = adversary_drive("nao", 16, 2, 8.0);
    std::string s = res.report.serialize();
    for (const char* key : {"which=", "q=", "d=", "delta=", "indistinguishable=",
                            "hull_gap=", "forced_error=", "note="})
        CHECK(s.find(key) != std::string::npos);
    CHECK(res.csv_row.rfind("nao,16,2,", 0) == 0);
}

TEST_CASE("determinism: adversary runs repeat exactly") {
    AdversaryDriveResult a = adversary_drive("ao", 16, 2, 8.0);
    AdversaryDriveResult b = adversary_drive("ao", 16, 2, 8.0);
    CHECK(a.report.hull_gap == b.report.hull_gap);
    CHECK(a.report.forced_error == b.report.forced_error);
    CHECK(a.csv_row == b.csv_row);
}
