#include "ohull/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace ohull {

namespace {

constexpr uint64_t kMcSamples = 1'000'000;

MembershipFn point_hull_membership(const std::vector<Point>& pts, int d) {
    if (d == 3) {
        Hull3D hull = Hull3D::build(pts);
        if (!hull.degenerate())
            return [hull](const Point& p) { return hull.contains(p); };
    }
    return [pts](const Point& p) {
        return convex_combination_feasible(pts, p, /*inequality=*/false);
    };
}

}  // namespace

std::string algo_name(Algo a) {
    switch (a) {
        case Algo::NonAdaptiveOrthogonal: return "nao";
        case Algo::AdaptiveOrthogonal: return "ao";
        case Algo::NonAdaptiveHalfplane: return "nah";
        case Algo::AdaptiveHalfplane: return "ah";
    }
    return "?";
}

Algo algo_from_name(const std::string& s) {
    if (s == "nao") return Algo::NonAdaptiveOrthogonal;
    if (s == "ao") return Algo::AdaptiveOrthogonal;
    if (s == "nah") return Algo::NonAdaptiveHalfplane;
    if (s == "ah") return Algo::AdaptiveHalfplane;
    throw Error("unknown algorithm '" + s + "' (expected nao|ao|nah|ah)");
}

OracleChoice oracle_from_name(const std::string& s) {
    if (s == "exact") return OracleChoice::Exact;
    if (s == "simulated") return OracleChoice::Simulated;
    if (s == "worst-shift") return OracleChoice::WorstShift;
    throw Error("unknown oracle '" + s + "' (expected exact|simulated|worst-shift)");
}

std::string PointGenSpec::descriptor() const {
    switch (kind) {
        case Kind::Uniform: return "uniform:" + std::to_string(n);
        case Kind::Circle: return "circle:" + std::to_string(n);
        case Kind::Clustered: return "clustered:" + std::to_string(n);
        case Kind::File: return "file:" + path;
    }
    return "?";
}

PointGenSpec PointGenSpec::parse(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos)
        throw Error("point spec must be kind:arg, got '" + s + "'");
    std::string kind = s.substr(0, colon);
    std::string arg = s.substr(colon + 1);
    PointGenSpec spec;
    if (kind == "file") {
        spec.kind = Kind::File;
        spec.path = arg;
        return spec;
    }
    uint64_t n = 0;
    try {
        n = std::stoull(arg);
    } catch (const std::exception&) {
        throw Error("bad point count in '" + s + "'");
    }
    if (n < 1) throw Error("point count must be >= 1");
    spec.n = n;
    if (kind == "uniform") spec.kind = Kind::Uniform;
    else if (kind == "circle") spec.kind = Kind::Circle;
    else if (kind == "clustered") spec.kind = Kind::Clustered;
    else throw Error("unknown point kind '" + kind + "'");
    return spec;
}

std::vector<Point> generate_points(const PointGenSpec& spec, int d, uint64_t seed) {
    switch (spec.kind) {
        case PointGenSpec::Kind::Uniform: {
            uint64_t s = hash_combine(seed, 0xA11CE);
            std::vector<Point> pts(spec.n, Point(d));
            for (uint64_t i = 0; i < spec.n; ++i)
                for (int j = 0; j < d; ++j) pts[i][j] = counter_uniform(s, j, i);
            return pts;
        }
        case PointGenSpec::Kind::Circle: {
            if (d != 2) throw Error("circle point sets are 2-d only");
            return circle_points(spec.n);
        }
        case PointGenSpec::Kind::Clustered: {
            uint64_t s = hash_combine(seed, 0xC1A5);
            const int k = 4;
            std::vector<Point> centers(k, Point(d));
            for (int c = 0; c < k; ++c)
                for (int j = 0; j < d; ++j)
                    centers[c][j] = 0.15 + 0.7 * counter_uniform(s, 100 + j, c);
            std::vector<Point> pts(spec.n, Point(d));
            for (uint64_t i = 0; i < spec.n; ++i) {
                const Point& c = centers[i % k];
                for (int j = 0; j < d; ++j) {
                    double off = 0.24 * counter_uniform(s, j, i) - 0.12;
                    pts[i][j] = std::clamp(c[j] + off, 0.0, 1.0);
                }
            }
            return pts;
        }
        case PointGenSpec::Kind::File: {
            PointSetBackend loaded = load_point_set_file(spec.path);
            if (loaded.dim != d)
                throw LoadError("point file dimension " + std::to_string(loaded.dim) +
                                " does not match requested " + std::to_string(d));
            return loaded.points;
        }
    }
    throw Error("unreachable");
}

uint64_t nah_direction_budget(uint64_t q) {
    uint64_t dirs = floor_root(q, 2);
    if (dirs < 3)
        throw BudgetError("emptiness budget too small for the non-adaptive "
                          "halfplane estimator (need q >= 9)");
    return dirs;
}

uint64_t ah_direction_budget(uint64_t q) {
    // largest q' with q' * (ceil(log2(sqrt(2) q'^4)) + 1) <= q
    uint64_t best = 0;
    for (uint64_t cand = 1;; ++cand) {
        double c4 = static_cast<double>(cand);
        double levels = std::sqrt(2.0) * c4 * c4 * c4 * c4;
        uint64_t cost = cand * (static_cast<uint64_t>(std::ceil(std::log2(levels))) + 1);
        if (cost > q) break;
        best = cand;
    }
    if (best == 0)
        throw BudgetError("emptiness budget too small for the adaptive "
                          "halfplane estimator");
    return best;
}

TrialRecord run_trial(const TrialConfig& cfg) {
    std::vector<Point> pts = generate_points(cfg.points, cfg.d, cfg.seed);
    Backend backend = PointSetBackend(cfg.d, pts);

    bool adaptive_alg =
        cfg.alg == Algo::AdaptiveOrthogonal || cfg.alg == Algo::AdaptiveHalfplane;
    OracleSession session(std::move(backend),
                          adaptive_alg ? OracleSession::Mode::Adaptive
                                       : OracleSession::Mode::NonAdaptive);

    EstimatorResult res;
    switch (cfg.alg) {
        case Algo::NonAdaptiveOrthogonal:
            res = non_adaptive_orthogonal(session, cfg.q, cfg.d);
            break;
        case Algo::AdaptiveOrthogonal:
            res = adaptive_orthogonal(session, cfg.q, cfg.d);
            break;
        case Algo::NonAdaptiveHalfplane: {
            if (cfg.d != 2) throw Error("halfplane estimators need --dim 2");
            uint64_t dirs = cfg.oracle == OracleChoice::Simulated
                                ? nah_direction_budget(cfg.q)
                                : cfg.q;
            ExtremeMode mode = cfg.oracle == OracleChoice::Exact
                                   ? ExtremeMode::Exact
                                   : cfg.oracle == OracleChoice::WorstShift
                                         ? ExtremeMode::WorstCaseShift
                                         : ExtremeMode::SimulatedNonAdaptive;
            res = non_adaptive_halfplane(session, dirs, mode, cfg.delta);
            break;
        }
        case Algo::AdaptiveHalfplane: {
            if (cfg.d != 2) throw Error("halfplane estimators need --dim 2");
            uint64_t dirs = cfg.oracle == OracleChoice::Simulated
                                ? ah_direction_budget(cfg.q)
                                : cfg.q;
            ExtremeMode mode = cfg.oracle == OracleChoice::Exact
                                   ? ExtremeMode::Exact
                                   : cfg.oracle == OracleChoice::WorstShift
                                         ? ExtremeMode::WorstCaseShift
                                         : ExtremeMode::SimulatedAdaptive;
            res = adaptive_halfplane(session, dirs, mode, cfg.delta);
            break;
        }
    }

    TrialRecord rec;
    rec.algorithm = algo_name(cfg.alg);
    rec.d = cfg.d;
    rec.q = cfg.q;
    rec.queries_used = res.queries.total();
    rec.extreme_queries = res.extreme_requests;
    rec.iterations = res.iterations;
    rec.seed = cfg.seed;
    rec.pointset = cfg.points.descriptor();
    rec.wall_ms = res.wall_ms;
    rec.min_angle_gap = res.min_angle_gap;

    if (cfg.d == 2) {
        ConvexPolygon truth = convex_hull_2d(pts);
        rec.error = symmetric_difference_area(res.hull.to_polygon(), truth);
        rec.error_std = 0.0;
    } else {
        MembershipFn truth = point_hull_membership(pts, cfg.d);
        MembershipFn est = [&res](const Point& p) { return res.hull.contains(p); };
        MonteCarloEstimate mc = monte_carlo_symmdiff(
            est, truth, cfg.d, kMcSamples, hash_combine(cfg.seed, 0xE44));
        rec.error = mc.estimate;
        rec.error_std = mc.std_error;
    }
    return rec;
}

std::string TrialRecord::csv_row() const {
    std::string out;
    out += algorithm;
    out += ',' + std::to_string(d);
    out += ',' + std::to_string(q);
    out += ',' + std::to_string(queries_used);
    out += ',' + std::to_string(extreme_queries);
    out += ',' + fmt_real(error);
    out += ',' + fmt_real(error_std);
    out += ',' + std::to_string(iterations);
    out += ',' + std::to_string(seed);
    out += ',' + pointset;
    out += ',' + fmt_real(wall_ms);
    return out;
}

void sweep(const SweepConfig& cfg) {
    if (cfg.q_ladder.empty()) throw Error("sweep needs a q ladder");
    for (size_t i = 1; i < cfg.q_ladder.size(); ++i)
        if (cfg.q_ladder[i] <= cfg.q_ladder[i - 1])
            throw Error("q ladder must be strictly increasing");
    if (cfg.trials < 1) throw Error("sweep needs trials >= 1");

    std::string body = std::string(kCsvHeader) + "\n";
    for (uint64_t q : cfg.q_ladder) {
        for (uint32_t t = 0; t < cfg.trials; ++t) {
            TrialConfig tc;
            tc.alg = cfg.alg;
            tc.d = cfg.d;
            tc.q = q;
            tc.points = cfg.points;
            tc.delta = cfg.delta;
            tc.oracle = cfg.oracle;
            tc.seed = hash_combine(hash_combine(cfg.seed, q), t);
            body += run_trial(tc).csv_row() + "\n";
        }
    }
    std::string tmp = cfg.out_path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw Error("cannot write " + tmp);
        out << body;
    }
    if (std::rename(tmp.c_str(), cfg.out_path.c_str()) != 0)
        throw Error("cannot move " + tmp + " to " + cfg.out_path);
}

SlopeFit fit_slope_points(const std::vector<std::pair<double, double>>& xy) {
    if (xy.size() < 3) throw InsufficientDataError("slope fit needs >= 3 points");
    double n = static_cast<double>(xy.size());
    double sx = 0, sy = 0;
    for (auto [x, y] : xy) { sx += x; sy += y; }
    double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (auto [x, y] : xy) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx <= 0) throw InsufficientDataError("slope fit needs distinct x values");
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ssr = 0;
    for (auto [x, y] : xy) {
        double r = y - (fit.intercept + fit.slope * x);
        ssr += r * r;
    }
    fit.std_error = xy.size() > 2 ? std::sqrt(ssr / (n - 2) / sxx) : 0.0;
    fit.x_points = xy.size();
    return fit;
}

SlopeFit fit_slope(const std::string& csv_path, const std::string& x_col,
                   const std::string& y_col) {
    std::ifstream in(csv_path);
    if (!in) throw Error("cannot open " + csv_path);
    std::string line;
    if (!std::getline(in, line)) throw InsufficientDataError("empty csv");
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::string cur;
        for (char ch : s) {
            if (ch == ',') { out.push_back(cur); cur.clear(); }
            else cur += ch;
        }
        out.push_back(cur);
        return out;
    };
    std::vector<std::string> header = split(line);
    auto col_of = [&](const std::string& name) {
        for (size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw Error("csv has no column '" + name + "'");
    };
    size_t xi = col_of(x_col), yi = col_of(y_col);

    std::map<double, std::vector<double>> groups;
    size_t excluded = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells = split(line);
        if (cells.size() <= std::max(xi, yi)) throw Error("short csv row");
        double x = std::stod(cells[xi]);
        double y = std::stod(cells[yi]);
        if (!(y > 0)) { ++excluded; continue; }
        if (!(x > 0)) throw Error("x column must be positive for a log-log fit");
        groups[x].push_back(y);
    }
    std::vector<std::pair<double, double>> xy;
    for (auto& [x, ys] : groups) {
        std::sort(ys.begin(), ys.end());
        double med = ys.size() % 2 ? ys[ys.size() / 2]
                                   : 0.5 * (ys[ys.size() / 2 - 1] + ys[ys.size() / 2]);
        xy.emplace_back(std::log2(x), std::log2(med));
    }
    SlopeFit fit = fit_slope_points(xy);
    fit.excluded_zero_rows = excluded;
    return fit;
}

AdversaryDriveResult adversary_drive(const std::string& which, uint64_t q, int d,
                                     double c) {
    AdversaryReport rep;
    if (which == "nao") {
        EstimatorFn est = [q, d](OracleSession& s) {
            return non_adaptive_orthogonal(s, q, d);
        };
        // the query set is P-independent; capture it with a throwaway backend
        OracleSession dry(PointSetBackend(d, {Point(d, 0.5)}),
                          OracleSession::Mode::NonAdaptive);
        est(dry);
        rep = nonadaptive_orth_adversary(dry.box_queries(), q, d, c, est);
    } else if (which == "ao") {
        EstimatorFn est = [q, d](OracleSession& s) {
            return adaptive_orthogonal(s, q, d);
        };
        rep = adaptive_orth_adversary_run(est, q, d, c);
    } else if (which == "nah") {
        if (d != 2) throw Error("the halfplane adversaries need --dim 2");
        // minimum viable target: the estimator needs 3 directions even when
        // the adversary budget is below 9 emptiness queries
        uint64_t dirs = std::max<uint64_t>(3, floor_root(q, 2));
        EstimatorFn est = [dirs](OracleSession& s) {
            return non_adaptive_halfplane(s, dirs, ExtremeMode::SimulatedNonAdaptive);
        };
        OracleSession dry(PointSetBackend(2, {Point(2, 0.5)}),
                          OracleSession::Mode::NonAdaptive);
        est(dry);
        rep = nonadaptive_halfplane_adversary(dry.halfspace_queries(), q, est);
    } else if (which == "ah") {
        if (d != 2) throw Error("the halfplane adversaries need --dim 2");
        // pick the largest internal parameter whose dry run stays within q
        // extreme queries; the dry runs are offline and uncounted
        std::vector<Point> z = circle_points(4 * q);
        uint64_t chosen = 0;
        for (uint64_t cand = q; cand >= 1; cand /= 2) {
            OracleSession dry(PointSetBackend(2, z), OracleSession::Mode::Adaptive);
            EstimatorResult r = adaptive_halfplane(dry, cand, ExtremeMode::Exact);
            if (r.extreme_requests <= q) { chosen = cand; break; }
            if (cand == 1) break;
        }
        if (chosen == 0)
            throw ConstructionFailedError("no parameter keeps the estimator within "
                                          "the extreme-query budget");
        EstimatorFn est = [chosen](OracleSession& s) {
            return adaptive_halfplane(s, chosen, ExtremeMode::Exact);
        };
        rep = adaptive_halfplane_adversary_run(est, q);
    } else {
        throw Error("unknown adversary '" + which + "' (expected nao|ao|nah|ah)");
    }

    AdversaryDriveResult out;
    out.csv_row = rep.which + ',' + std::to_string(rep.q) + ',' + std::to_string(rep.d) +
                  ',' + fmt_real(rep.hull_gap) + ',' + fmt_real(rep.forced_error) + ',' +
                  (rep.indistinguishable ? "true" : "false");
    out.report = std::move(rep);
    return out;
}

}  // namespace ohull
