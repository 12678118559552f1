#pragma once

#include "ohull/membership.hpp"
#include "ohull/oracle.hpp"

namespace ohull {

struct QueryCounts {
    uint64_t box = 0;
    uint64_t halfspace = 0;
    uint64_t extreme = 0;
    uint64_t total() const { return box + halfspace + extreme; }
};

struct EstimatorResult {
    ApproxHull hull;
    QueryCounts queries;          // ledger totals for the run
    uint64_t extreme_requests = 0;  // directions asked of the extreme oracle
    uint64_t iterations = 0;
    double wall_ms = 0;
    double min_angle_gap = 0;     // adaptive halfplane: smallest angular gap in V
};

// Partitions the cube into floor(q^{1/d})^d closed cells, queries all of them
// in one batch and returns the hull of the corners of the nonempty cells.
EstimatorResult non_adaptive_orthogonal(OracleSession& session, uint64_t q, int d);

// Per-iteration view of the orthant refinement (U and L corner lists).
using OrthantObserver = std::function<void(uint64_t iteration,
                                           const std::vector<Point>& u_corners,
                                           const std::vector<Point>& l_corners)>;

// One orthant of the adaptive estimator: the sandwich refinement over dyadic
// boxes for sign vector v. Returns the final U corner list.
std::vector<Point> adaptive_orthogonal_orthant(OracleSession& session, uint64_t q,
                                               const SignVec& v,
                                               const OrthantObserver& observer = {});

// Runs the orthant refinement for all 2^d sign vectors on one session and
// returns the intersection-of-dominance-hulls representation.
EstimatorResult adaptive_orthogonal(OracleSession& session, uint64_t q, int d);

// q extreme-halfplane directions spread uniformly on the circle, one batch,
// output clipped to the unit square. delta: nullopt = auto (1/q).
EstimatorResult non_adaptive_halfplane(OracleSession& session, uint64_t q,
                                       ExtremeMode mode,
                                       std::optional<double> delta = std::nullopt);

// Angular refinement driven by the gap*edge threshold 1/q^2.
// delta: nullopt = auto (1/q^4).
EstimatorResult adaptive_halfplane(OracleSession& session, uint64_t q,
                                   ExtremeMode mode,
                                   std::optional<double> delta = std::nullopt);

// All 2^d sign vectors in a fixed order (bit j of the mask set => v_j = +1).
std::vector<SignVec> all_sign_vectors(int d);

}  // namespace ohull
