#include "ohull/oracle.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace ohull {

namespace {
constexpr double kTiny = 1e-12;
}

PointSetBackend::PointSetBackend(int d, std::vector<Point> pts)
    : dim(d), points(std::move(pts)) {
    for (const Point& p : points) {
        if (static_cast<int>(p.size()) != dim || !all_finite(p) || !in_unit_cube(p))
            throw InvalidGeometryError("point set must lie in [0,1]^d");
    }
}

SlabPatchBackend::SlabPatchBackend(Point u, double o, std::optional<Point> extra_pt)
    : dim(static_cast<int>(u.size())), normal(std::move(u)), offset(o),
      extra(std::move(extra_pt)) {
    if (std::fabs(norm(normal) - 1.0) > kTiny)
        throw InvalidGeometryError("slab patch normal must be unit");
    double sum = 0;
    for (double c : normal) {
        if (c <= 0) throw InvalidGeometryError("slab patch normal must be all-positive");
        sum += c;
    }
    if (offset < -kTiny || offset > sum + kTiny)
        throw InvalidGeometryError("slab patch misses the unit cube");
    if (extra && (static_cast<int>(extra->size()) != dim || !in_unit_cube(*extra)))
        throw InvalidGeometryError("slab patch extra point must lie in [0,1]^d");
}

double SlabPatchBackend::patch_extreme(const Point& c, bool maximize) const {
    // continuous knapsack: optimize <c,p> over { p in [0,1]^d : <u,p> = offset }
    std::vector<size_t> order(normal.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        double ra = c[a] / normal[a], rb = c[b] / normal[b];
        if (ra != rb) return maximize ? ra > rb : ra < rb;
        return a < b;
    });
    double remaining = offset;
    double value = 0;
    for (size_t j : order) {
        double take = std::min(1.0, std::max(0.0, remaining / normal[j]));
        value += c[j] * take;
        remaining -= normal[j] * take;
        if (remaining <= 0) break;
    }
    return value;
}

int backend_dim(const Backend& b) {
    return std::visit([](const auto& x) { return x.dim; }, b);
}

bool backend_box_nonempty(const Backend& b, const AxisBox& box) {
    if (const auto* ps = std::get_if<PointSetBackend>(&b)) {
        for (const Point& p : ps->points)
            if (box.contains(p)) return true;
        return false;
    }
    const auto& slab = std::get<SlabPatchBackend>(b);
    if (slab.extra && box.contains(*slab.extra)) return true;
    auto clipped = box.clipped(AxisBox::unit_cube(slab.dim));
    if (!clipped) return false;
    auto [mn, mx] = project_extent(slab.normal, *clipped);
    return mn <= slab.offset && slab.offset <= mx;
}

bool backend_halfspace_nonempty(const Backend& b, const Halfspace& h) {
    if (const auto* ps = std::get_if<PointSetBackend>(&b)) {
        for (const Point& p : ps->points)
            if (h.contains(p)) return true;
        return false;
    }
    const auto& slab = std::get<SlabPatchBackend>(b);
    if (slab.extra && h.contains(*slab.extra)) return true;
    return slab.patch_extreme(h.normal, /*maximize=*/false) <= h.offset;
}

double backend_extreme_offset(const Backend& b, const Point& v) {
    if (const auto* ps = std::get_if<PointSetBackend>(&b)) {
        if (ps->points.empty())
            throw EmptyInputError("extreme query on an empty point set");
        double best = -1e300;
        for (const Point& p : ps->points) best = std::max(best, dot(p, v));
        return best;
    }
    const auto& slab = std::get<SlabPatchBackend>(b);
    double best = slab.patch_extreme(v, /*maximize=*/true);
    if (slab.extra) best = std::max(best, dot(*slab.extra, v));
    return best;
}

// ---------------------------------------------------------------------------
// OracleSession

OracleSession::OracleSession(Backend backend, Mode mode)
    : backend_(std::move(backend)), mode_(mode), dim_(backend_dim(backend_)) {}

size_t OracleSession::push(LedgerEntry entry) {
    entry.batch = open_batch_;
    entry.seq = entries_.size();
    if (any_read_) multi_batch_before_read_ = true;  // submitted after a read
    batch_has_queries_ = true;
    entries_.push_back(std::move(entry));
    return entries_.size() - 1;
}

size_t OracleSession::submit_box(const AxisBox& box) {
    LedgerEntry e{QueryKind::Box, box, backend_box_nonempty(backend_, box), 0, 0, 0};
    return push(std::move(e));
}

size_t OracleSession::submit_halfspace(const Halfspace& h) {
    LedgerEntry e{QueryKind::Halfspace, h, backend_halfspace_nonempty(backend_, h), 0, 0,
                  0};
    return push(std::move(e));
}

size_t OracleSession::submit_extreme(const Point& v, const ExtremeOracleConfig& cfg) {
    if (cfg.mode != ExtremeMode::Exact && cfg.mode != ExtremeMode::WorstCaseShift)
        throw std::logic_error("simulated extreme queries go through the simulators");
    if (cfg.delta < 0)
        throw InvalidGeometryError("extreme oracle accuracy must be >= 0");
    double b = backend_extreme_offset(backend_, v);
    if (cfg.mode == ExtremeMode::WorstCaseShift) b += cfg.delta;
    LedgerEntry e{QueryKind::Extreme, v, false, b, 0, 0};
    return push(std::move(e));
}

void OracleSession::close_batch() {
    if (!batch_has_queries_) return;
    ++closed_batches_;
    ++open_batch_;
    batch_has_queries_ = false;
}

void OracleSession::check_readable(size_t id, QueryKind kind) {
    if (id >= entries_.size() || entries_[id].kind != kind)
        throw std::logic_error("bad query id");
    if (entries_[id].batch == open_batch_ && batch_has_queries_) {
        violation_ = true;
        throw AdaptivityViolationError("answer read before its batch was closed");
    }
    any_read_ = true;
}

bool OracleSession::box_answer(size_t id) {
    check_readable(id, QueryKind::Box);
    return entries_[id].bool_answer;
}

bool OracleSession::halfspace_answer(size_t id) {
    check_readable(id, QueryKind::Halfspace);
    return entries_[id].bool_answer;
}

Halfspace OracleSession::extreme_answer(size_t id) {
    check_readable(id, QueryKind::Extreme);
    return Halfspace(std::get<Point>(entries_[id].query), entries_[id].offset_answer);
}

bool OracleSession::query_box(const AxisBox& box) {
    size_t id = submit_box(box);
    close_batch();
    return box_answer(id);
}

bool OracleSession::query_halfspace(const Halfspace& h) {
    size_t id = submit_halfspace(h);
    close_batch();
    return halfspace_answer(id);
}

Halfspace OracleSession::query_extreme(const Point& v, const ExtremeOracleConfig& cfg) {
    switch (cfg.mode) {
        case ExtremeMode::Exact:
        case ExtremeMode::WorstCaseShift: {
            size_t id = submit_extreme(v, cfg);
            close_batch();
            return extreme_answer(id);
        }
        case ExtremeMode::SimulatedNonAdaptive:
            return simulate_extreme_nonadaptive(*this, v, cfg.delta);
        case ExtremeMode::SimulatedAdaptive:
            return simulate_extreme_adaptive(*this, v, cfg.delta);
    }
    throw std::logic_error("unreachable");
}

LedgerReport OracleSession::report() const {
    LedgerReport r;
    for (const LedgerEntry& e : entries_) {
        switch (e.kind) {
            case QueryKind::Box: ++r.box_queries; break;
            case QueryKind::Halfspace: ++r.halfspace_queries; break;
            case QueryKind::Extreme: ++r.extreme_queries; break;
        }
    }
    r.batches = closed_batches_ + (batch_has_queries_ ? 1 : 0);
    r.violation = violation_;
    r.adaptive = violation_ || multi_batch_before_read_ || r.batches > 1;
    return r;
}

std::string OracleSession::transcript() const {
    std::string out;
    for (const LedgerEntry& e : entries_) {
        out += std::to_string(e.batch);
        out += ':';
        switch (e.kind) {
            case QueryKind::Box: {
                const auto& box = std::get<AxisBox>(e.query);
                out += "B";
                for (double c : box.lo) out += ' ' + fmt_real(c);
                for (double c : box.hi) out += ' ' + fmt_real(c);
                out += " -> ";
                out += e.bool_answer ? "nonempty" : "empty";
                break;
            }
            case QueryKind::Halfspace: {
                const auto& h = std::get<Halfspace>(e.query);
                out += "H";
                for (double c : h.normal) out += ' ' + fmt_real(c);
                out += ' ' + fmt_real(h.offset);
                out += " -> ";
                out += e.bool_answer ? "nonempty" : "empty";
                break;
            }
            case QueryKind::Extreme: {
                const auto& v = std::get<Point>(e.query);
                out += "E";
                for (double c : v) out += ' ' + fmt_real(c);
                out += " -> ";
                out += fmt_real(e.offset_answer);
                break;
            }
        }
        out += '\n';
    }
    return out;
}

std::vector<AxisBox> OracleSession::box_queries() const {
    std::vector<AxisBox> out;
    for (const LedgerEntry& e : entries_)
        if (e.kind == QueryKind::Box) out.push_back(std::get<AxisBox>(e.query));
    return out;
}

std::vector<Halfspace> OracleSession::halfspace_queries() const {
    std::vector<Halfspace> out;
    for (const LedgerEntry& e : entries_)
        if (e.kind == QueryKind::Halfspace) out.push_back(std::get<Halfspace>(e.query));
    return out;
}

// ---------------------------------------------------------------------------
// Extreme halfplane simulation

namespace {

Point negated_vec(const Point& v) {
    Point r(v.size());
    for (size_t j = 0; j < v.size(); ++j) r[j] = -v[j];
    return r;
}

}  // namespace

ExtremeSimPlan extreme_sim_submit(OracleSession& session, const Point& v, double delta) {
    if (delta <= 0) throw InvalidGeometryError("simulation requires delta > 0");
    ExtremeSimPlan plan;
    plan.v = v;
    plan.delta = delta;
    AxisBox cube = AxisBox::unit_cube(session.dim());
    auto [o_min, o_max] = project_extent(v, cube);
    plan.n = static_cast<uint64_t>(std::ceil((o_max - o_min) / delta - kTiny)) + 1;
    // boundary offsets along -v; index 0 is below the cube, hence empty
    plan.base = -o_max - delta / 2;
    Point nv = negated_vec(v);
    for (uint64_t i = 0; i <= plan.n; ++i) {
        Halfspace h(nv, plan.base + static_cast<double>(i) * delta);
        plan.query_ids.push_back(session.submit_halfspace(h));
    }
    return plan;
}

Halfspace extreme_sim_resolve(OracleSession& session, const ExtremeSimPlan& plan) {
    uint64_t largest_empty = 0;  // index 0 is empty by construction
    bool found = false;
    for (uint64_t i = 0; i <= plan.n; ++i) {
        if (!session.halfspace_answer(plan.query_ids[i])) {
            largest_empty = i;
            found = true;
        }
    }
    if (!found) largest_empty = 0;  // defensive: return the cube-covering halfplane
    double boundary = plan.base + static_cast<double>(largest_empty) * plan.delta;
    return Halfspace(plan.v, -boundary);
}

Halfspace simulate_extreme_nonadaptive(OracleSession& session, const Point& v,
                                       double delta) {
    ExtremeSimPlan plan = extreme_sim_submit(session, v, delta);
    session.close_batch();
    return extreme_sim_resolve(session, plan);
}

Halfspace simulate_extreme_adaptive(OracleSession& session, const Point& v,
                                    double delta) {
    if (delta <= 0) throw InvalidGeometryError("simulation requires delta > 0");
    AxisBox cube = AxisBox::unit_cube(session.dim());
    auto [o_min, o_max] = project_extent(v, cube);
    uint64_t n = static_cast<uint64_t>(std::ceil((o_max - o_min) / delta - kTiny)) + 1;
    double base = -o_max - delta / 2;
    Point nv = negated_vec(v);
    // lo empty by construction, hi covers the cube; emptiness is monotone
    uint64_t lo = 0, hi = n;
    while (hi - lo > 1) {
        uint64_t mid = lo + (hi - lo) / 2;
        Halfspace h(nv, base + static_cast<double>(mid) * delta);
        if (session.query_halfspace(h))
            hi = mid;
        else
            lo = mid;
    }
    return Halfspace(v, -(base + static_cast<double>(lo) * delta));
}

// ---------------------------------------------------------------------------
// Point-set files

PointSetBackend load_point_set(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw LoadError("missing header line");
    std::istringstream hdr(line);
    long long d = 0, n = 0;
    if (!(hdr >> d >> n) || d < 1 || n < 0) throw LoadError("header must be 'd n'");
    std::string extra_tok;
    if (hdr >> extra_tok) throw LoadError("trailing tokens in header");
    std::vector<Point> pts;
    pts.reserve(static_cast<size_t>(n));
    for (long long i = 0; i < n; ++i) {
        if (!std::getline(in, line))
            throw LoadError("expected " + std::to_string(n) + " points, got " +
                            std::to_string(i));
        std::istringstream row(line);
        Point p(static_cast<size_t>(d));
        for (long long j = 0; j < d; ++j) {
            if (!(row >> p[static_cast<size_t>(j)]))
                throw LoadError("bad coordinate at line " + std::to_string(i + 2));
        }
        if (row >> extra_tok) throw LoadError("trailing tokens at line " +
                                              std::to_string(i + 2));
        for (double c : p) {
            if (!std::isfinite(c) || c < 0.0 || c > 1.0)
                throw LoadError("coordinate out of [0,1] at line " +
                                std::to_string(i + 2));
        }
        pts.push_back(std::move(p));
    }
    // anything but whitespace after the last point is an error
    while (std::getline(in, line)) {
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c)))
                throw LoadError("unexpected content after point rows");
    }
    return PointSetBackend(static_cast<int>(d), std::move(pts));
}

PointSetBackend load_point_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open " + path);
    return load_point_set(in);
}

void save_point_set_file(const std::string& path, const std::vector<Point>& pts, int d) {
    std::ofstream out(path);
    if (!out) throw LoadError("cannot write " + path);
    out << d << ' ' << pts.size() << '\n';
    for (const Point& p : pts) {
        for (int j = 0; j < d; ++j) out << (j ? " " : "") << fmt_real(p[j]);
        out << '\n';
    }
}

}  // namespace ohull
