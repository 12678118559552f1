#pragma once

#include <iosfwd>
#include <variant>

#include "ohull/geometry.hpp"

namespace ohull {

// Explicit hidden point set P ⊆ [0,1]^d.
struct PointSetBackend {
    int dim = 0;
    std::vector<Point> points;

    PointSetBackend() = default;
    PointSetBackend(int d, std::vector<Point> pts);
};

// Continuous point set {p ∈ [0,1]^d : <p,u> = o} plus an optional extra point,
// with u a unit vector of all-positive coordinates. Emptiness answers are
// computed analytically, standing in for an arbitrarily dense finite set.
struct SlabPatchBackend {
    int dim = 0;
    Point normal;   // unit, all coordinates > 0
    double offset = 0;
    std::optional<Point> extra;

    SlabPatchBackend() = default;
    SlabPatchBackend(Point u, double o, std::optional<Point> extra_pt = std::nullopt);

    // min/max of <c,p> over the patch (continuous knapsack; extra excluded).
    double patch_extreme(const Point& c, bool maximize) const;
};

using Backend = std::variant<PointSetBackend, SlabPatchBackend>;

int backend_dim(const Backend& b);
bool backend_box_nonempty(const Backend& b, const AxisBox& box);
bool backend_halfspace_nonempty(const Backend& b, const Halfspace& h);
// max over the backend of <p,v>; EmptyInputError on an empty point set.
double backend_extreme_offset(const Backend& b, const Point& v);

enum class QueryKind { Box, Halfspace, Extreme };

enum class ExtremeMode { Exact, SimulatedNonAdaptive, SimulatedAdaptive, WorstCaseShift };

struct ExtremeOracleConfig {
    double delta = 0;  // accuracy; 0 only valid for Exact / WorstCaseShift
    ExtremeMode mode = ExtremeMode::Exact;
};

struct LedgerEntry {
    QueryKind kind;
    std::variant<AxisBox, Halfspace, Point> query;  // Point = extreme direction
    bool bool_answer = false;
    double offset_answer = 0;
    uint64_t batch = 0;
    uint64_t seq = 0;
};

struct LedgerReport {
    uint64_t box_queries = 0;
    uint64_t halfspace_queries = 0;
    uint64_t extreme_queries = 0;
    uint64_t batches = 0;
    bool adaptive = false;
    bool violation = false;
    uint64_t total() const { return box_queries + halfspace_queries + extreme_queries; }
};

// One oracle session: a backend plus the query ledger that counts queries and
// audits adaptivity. Non-adaptive mode forbids reading an answer while its
// batch is still open. Single-threaded by design.
class OracleSession {
  public:
    enum class Mode { NonAdaptive, Adaptive };

    OracleSession(Backend backend, Mode mode);

    int dim() const { return dim_; }
    Mode mode() const { return mode_; }
    const Backend& backend() const { return backend_; }

    size_t submit_box(const AxisBox& box);
    size_t submit_halfspace(const Halfspace& h);
    size_t submit_extreme(const Point& v, const ExtremeOracleConfig& cfg);
    void close_batch();

    bool box_answer(size_t id);
    bool halfspace_answer(size_t id);
    Halfspace extreme_answer(size_t id);

    // submit + close + read in one step (adaptive use)
    bool query_box(const AxisBox& box);
    bool query_halfspace(const Halfspace& h);
    Halfspace query_extreme(const Point& v, const ExtremeOracleConfig& cfg);

    LedgerReport report() const;
    // Deterministic textual transcript of (query, answer) pairs, for
    // indistinguishability comparisons.
    std::string transcript() const;
    const std::vector<LedgerEntry>& entries() const { return entries_; }

    std::vector<AxisBox> box_queries() const;
    std::vector<Halfspace> halfspace_queries() const;

  private:
    size_t push(LedgerEntry entry);
    void check_readable(size_t id, QueryKind kind);

    Backend backend_;
    Mode mode_;
    int dim_;
    std::vector<LedgerEntry> entries_;
    uint64_t open_batch_ = 0;     // id of the batch currently accepting queries
    bool batch_has_queries_ = false;
    uint64_t closed_batches_ = 0;
    bool any_read_ = false;
    bool multi_batch_before_read_ = false;
    bool violation_ = false;
};

// δ-accurate extreme halfplane simulation from emptiness queries.
// Plan/resolve split so a caller may batch several directions together.
struct ExtremeSimPlan {
    Point v;          // requested outward direction
    double delta = 0;
    double base = 0;  // boundary offset along -v of grid index 0
    uint64_t n = 0;   // grid has indices 0..n
    std::vector<size_t> query_ids;
};

ExtremeSimPlan extreme_sim_submit(OracleSession& session, const Point& v, double delta);
Halfspace extreme_sim_resolve(OracleSession& session, const ExtremeSimPlan& plan);

Halfspace simulate_extreme_nonadaptive(OracleSession& session, const Point& v,
                                       double delta);
Halfspace simulate_extreme_adaptive(OracleSession& session, const Point& v,
                                    double delta);

// Point-set file format: "d n" then n lines of d decimals in [0,1]. Strict.
PointSetBackend load_point_set(std::istream& in);
PointSetBackend load_point_set_file(const std::string& path);
void save_point_set_file(const std::string& path, const std::vector<Point>& pts, int d);

}  // namespace ohull
