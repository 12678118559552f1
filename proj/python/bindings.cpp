#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ohull/harness.hpp"

namespace py = pybind11;
using namespace ohull;

namespace {

py::dict trial_to_dict(const TrialRecord& r) {
    py::dict d;
    d["algorithm"] = r.algorithm;
    d["d"] = r.d;
    d["q"] = r.q;
    d["queries_used"] = r.queries_used;
    d["extreme_queries"] = r.extreme_queries;
    d["error"] = r.error;
    d["error_std"] = r.error_std;
    d["iterations"] = r.iterations;
    d["seed"] = r.seed;
    d["pointset"] = r.pointset;
    d["wall_ms"] = r.wall_ms;
    return d;
}

py::dict report_to_dict(const AdversaryReport& r) {
    py::dict d;
    d["which"] = r.which;
    d["q"] = r.q;
    d["d"] = r.d;
    d["c"] = r.c;
    d["delta"] = r.delta;
    d["chosen_index"] = r.chosen_index;
    d["bucket_a"] = r.bucket_a;
    d["bucket_b"] = r.bucket_b;
    d["indistinguishable"] = r.indistinguishable;
    d["hull_gap"] = r.hull_gap;
    d["forced_error"] = r.forced_error;
    d["queries_captured"] = r.queries_captured;
    d["note"] = r.note;
    return d;
}

ConvexPolygon polygon_from_list(const std::vector<std::pair<double, double>>& pts) {
    ConvexPolygon poly;
    for (auto [x, y] : pts) poly.vertices.push_back({x, y});
    return poly;
}

}  // namespace

PYBIND11_MODULE(oraclehull, m) {
    m.doc() = "convex hull approximation from range-emptiness oracles";

    m.def("polygon_area",
          [](const std::vector<std::pair<double, double>>& pts) {
              return polygon_area(polygon_from_list(pts));
          },
          py::arg("vertices"));

    m.def("convex_hull",
          [](const std::vector<Point>& pts) {
              ConvexPolygon h = convex_hull_2d(pts);
              std::vector<std::pair<double, double>> out;
              for (const Vec2& v : h.vertices) out.emplace_back(v.x, v.y);
              return out;
          },
          py::arg("points"));

    m.def("symmetric_difference_area",
          [](const std::vector<std::pair<double, double>>& a,
             const std::vector<std::pair<double, double>>& b) {
              return symmetric_difference_area(polygon_from_list(a),
                                               polygon_from_list(b));
          },
          py::arg("a"), py::arg("b"));

    m.def("generate_points",
          [](const std::string& spec, int d, uint64_t seed) {
              return generate_points(PointGenSpec::parse(spec), d, seed);
          },
          py::arg("spec"), py::arg("d") = 2, py::arg("seed") = 0);

    m.def("run_trial",
          [](const std::string& alg, int d, uint64_t q, const std::string& points,
             const std::string& oracle, std::optional<double> delta, uint64_t seed) {
              TrialConfig cfg;
              cfg.alg = algo_from_name(alg);
              cfg.d = d;
              cfg.q = q;
              cfg.points = PointGenSpec::parse(points);
              cfg.delta = delta;
              cfg.oracle = oracle_from_name(oracle);
              cfg.seed = seed;
              return trial_to_dict(run_trial(cfg));
          },
          py::arg("alg"), py::arg("d"), py::arg("q"), py::arg("points"),
          py::arg("oracle") = "simulated", py::arg("delta") = std::nullopt,
          py::arg("seed") = 0);

    m.def("sweep",
          [](const std::string& alg, int d, const std::vector<uint64_t>& q_ladder,
             uint32_t trials, const std::string& points, const std::string& oracle,
             uint64_t seed, const std::string& out_path) {
              SweepConfig cfg;
              cfg.alg = algo_from_name(alg);
              cfg.d = d;
              cfg.q_ladder = q_ladder;
              cfg.trials = trials;
              cfg.points = PointGenSpec::parse(points);
              cfg.oracle = oracle_from_name(oracle);
              cfg.seed = seed;
              cfg.out_path = out_path;
              sweep(cfg);
          },
          py::arg("alg"), py::arg("d"), py::arg("q_ladder"), py::arg("trials"),
          py::arg("points"), py::arg("oracle"), py::arg("seed"), py::arg("out_path"));

    m.def("fit_slope",
          [](const std::string& csv, const std::string& x, const std::string& y) {
              SlopeFit f = fit_slope(csv, x, y);
              py::dict d;
              d["slope"] = f.slope;
              d["intercept"] = f.intercept;
              d["std_error"] = f.std_error;
              d["x_points"] = f.x_points;
              d["excluded_zero_rows"] = f.excluded_zero_rows;
              return d;
          },
          py::arg("csv"), py::arg("x") = "q", py::arg("y") = "error");

    m.def("adversary",
          [](const std::string& which, uint64_t q, int d, double c) {
              if (c <= 0) c = d == 2 ? 8.0 : 4.0 * d;
              return report_to_dict(adversary_drive(which, q, d, c).report);
          },
          py::arg("which"), py::arg("q"), py::arg("d") = 2, py::arg("c") = 0.0);
}
