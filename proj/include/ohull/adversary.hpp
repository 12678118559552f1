#pragma once

#include <functional>

#include "ohull/algorithms.hpp"

namespace ohull {

using EstimatorFn = std::function<EstimatorResult(OracleSession&)>;

// Outcome of one lower-bound construction: the instance pair, whether the
// estimator's transcripts were byte-identical, and the forced error.
struct AdversaryReport {
    std::string which;
    uint64_t q = 0;
    int d = 2;
    double c = 0;
    double delta = 0;
    int chosen_index = -1;                     // slab constructions
    double bucket_a = 0, bucket_b = 0;         // halfplane bucket construction
    bool indistinguishable = false;
    std::string transcript_diff;               // empty when transcripts match
    double hull_gap = 0;                       // ||CH(Z') \ CH(Z)|| (or CH(Z)\CH(B))
    double forced_error = 0;                   // max of the two estimator errors
    double error_first = 0, error_second = 0;  // vs CH(Z) and CH(Z') (resp. CH(B))
    uint64_t queries_captured = 0;
    std::string note;

    std::string serialize() const;  // key=value lines
};

// Classifies boxes against the hyperplane family x_1+...+x_d = 1 + delta*i:
// a box is i-good when it meets H_i and misses H_{i-1}; at most one i fits.
struct GoodBoxClassifier {
    int d = 2;
    uint64_t n = 0;
    double delta = 0;

    std::optional<int> classify(const AxisBox& box) const;
    std::vector<uint64_t> counts(const std::vector<AxisBox>& boxes) const;
};

// Lower-bound constructions. Each builds an indistinguishable instance pair,
// re-runs the estimator on both and compares the full transcripts.
AdversaryReport nonadaptive_orth_adversary(const std::vector<AxisBox>& captured,
                                           uint64_t q, int d, double c,
                                           const EstimatorFn& estimator);

AdversaryReport adaptive_orth_adversary_run(const EstimatorFn& estimator, uint64_t q,
                                            int d, double c);

AdversaryReport nonadaptive_halfplane_adversary(const std::vector<Halfspace>& captured,
                                                uint64_t q,
                                                const EstimatorFn& estimator);

AdversaryReport adaptive_halfplane_adversary_run(const EstimatorFn& estimator,
                                                 uint64_t q);

// Evenly spaced points on the largest disk in [0,1]^2, angle 2*pi*k/n from
// (0.5 + r cos, 0.5 + r sin), r = 0.5.
std::vector<Point> circle_points(uint64_t n);

// Vertices of {x : sum x_j = level} ∩ [0,1]^d.
std::vector<Point> hyperplane_cube_vertices(int d, double level);

}  // namespace ohull
