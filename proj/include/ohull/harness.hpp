#pragma once

#include "ohull/adversary.hpp"

namespace ohull {

enum class Algo { NonAdaptiveOrthogonal, AdaptiveOrthogonal, NonAdaptiveHalfplane,
                  AdaptiveHalfplane };

// CLI oracle selector for the halfplane estimators.
enum class OracleChoice { Exact, Simulated, WorstShift };

std::string algo_name(Algo a);          // nao | ao | nah | ah
Algo algo_from_name(const std::string& s);
OracleChoice oracle_from_name(const std::string& s);

struct PointGenSpec {
    enum class Kind { Uniform, Circle, Clustered, File };
    Kind kind = Kind::Uniform;
    uint64_t n = 0;
    std::string path;

    std::string descriptor() const;
    static PointGenSpec parse(const std::string& s);  // uniform:n|circle:n|clustered:n|file:PATH
};

std::vector<Point> generate_points(const PointGenSpec& spec, int d, uint64_t seed);

struct TrialConfig {
    Algo alg = Algo::NonAdaptiveOrthogonal;
    int d = 2;
    uint64_t q = 16;
    PointGenSpec points;
    std::optional<double> delta;  // nullopt = auto
    OracleChoice oracle = OracleChoice::Simulated;
    uint64_t seed = 0;
};

struct TrialRecord {
    std::string algorithm;
    int d = 2;
    uint64_t q = 0;
    uint64_t queries_used = 0;
    uint64_t extreme_queries = 0;
    double error = 0;
    double error_std = 0;
    uint64_t iterations = 0;
    uint64_t seed = 0;
    std::string pointset;
    double wall_ms = 0;
    double min_angle_gap = 0;  // informational, adaptive halfplane only

    std::string csv_row() const;
};

inline constexpr const char* kCsvHeader =
    "algorithm,d,q,queries_used,extreme_queries,error,error_std,iterations,seed,"
    "pointset,wall_ms";

TrialRecord run_trial(const TrialConfig& cfg);

// Emptiness-budget translation for the halfplane estimators under simulation:
// the estimator's own direction budget derived from the emptiness budget q.
uint64_t nah_direction_budget(uint64_t q);
uint64_t ah_direction_budget(uint64_t q);

struct SweepConfig {
    Algo alg = Algo::NonAdaptiveOrthogonal;
    int d = 2;
    std::vector<uint64_t> q_ladder;
    uint32_t trials = 1;
    PointGenSpec points;
    std::optional<double> delta;
    OracleChoice oracle = OracleChoice::Simulated;
    uint64_t seed = 0;
    std::string out_path;
};

// One CSV row per (q, trial), written atomically in deterministic order.
void sweep(const SweepConfig& cfg);

struct SlopeFit {
    double slope = 0;
    double intercept = 0;
    double std_error = 0;
    size_t x_points = 0;
    size_t excluded_zero_rows = 0;
};

// OLS on (log2 x, log2 median-per-x); rows with y <= 0 are excluded and counted.
SlopeFit fit_slope(const std::string& csv_path, const std::string& x_col,
                   const std::string& y_col);
SlopeFit fit_slope_points(const std::vector<std::pair<double, double>>& xy);

struct AdversaryDriveResult {
    AdversaryReport report;
    std::string csv_row;  // which,q,d,gap,forced_error,verdict
};

inline constexpr const char* kAdversaryCsvHeader = "which,q,d,gap,forced_error,verdict";

AdversaryDriveResult adversary_drive(const std::string& which, uint64_t q, int d,
                                     double c);

}  // namespace ohull
