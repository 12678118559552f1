#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ohull/harness.hpp"

namespace {

using namespace ohull;

std::optional<double> parse_delta(const std::string& s) {
    if (s == "auto") return std::nullopt;
    try {
        return std::stod(s);
    } catch (const std::exception&) {
        throw Error("--delta expects 'auto' or a number, got '" + s + "'");
    }
}

std::vector<uint64_t> parse_ladder(const std::string& s) {
    // lo:hi:factor
    auto c1 = s.find(':');
    auto c2 = s.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw Error("--q-ladder expects lo:hi:factor");
    uint64_t lo = std::stoull(s.substr(0, c1));
    uint64_t hi = std::stoull(s.substr(c1 + 1, c2 - c1 - 1));
    uint64_t factor = std::stoull(s.substr(c2 + 1));
    if (lo < 1 || hi < lo || factor < 2) throw Error("bad --q-ladder range");
    std::vector<uint64_t> ladder;
    for (uint64_t q = lo; q <= hi; q *= factor) ladder.push_back(q);
    return ladder;
}

void print_trial(const TrialRecord& r) {
    std::cout << "algorithm=" << r.algorithm << "\n"
              << "d=" << r.d << "\n"
              << "q=" << r.q << "\n"
              << "queries_used=" << r.queries_used << "\n"
              << "extreme_queries=" << r.extreme_queries << "\n"
              << "error=" << fmt_real(r.error) << "\n"
              << "error_std=" << fmt_real(r.error_std) << "\n"
              << "iterations=" << r.iterations << "\n"
              << "seed=" << r.seed << "\n"
              << "pointset=" << r.pointset << "\n"
              << "wall_ms=" << fmt_real(r.wall_ms) << "\n";
}

int run_cli(int argc, char** argv) {
    CLI::App app{"convex hull approximation workbench over range-emptiness oracles"};
    app.require_subcommand(1);

    std::string alg = "nao", points = "uniform:64", delta = "auto",
                oracle = "simulated", out, ladder, csv, xcol = "q", ycol = "error",
                which = "nao";
    int dim = 2;
    uint64_t q = 16, seed = 0;
    uint32_t trials = 1;
    double c_const = 0;

    CLI::App* run = app.add_subcommand("run", "single estimator trial");
    run->add_option("--alg", alg, "nao|ao|nah|ah")->required();
    run->add_option("--dim", dim, "dimension d");
    run->add_option("--q", q, "query budget")->required();
    run->add_option("--points", points, "uniform:n|circle:n|clustered:n|file:PATH");
    run->add_option("--delta", delta, "extreme oracle accuracy (auto|VALUE)");
    run->add_option("--oracle", oracle, "exact|simulated|worst-shift");
    run->add_option("--seed", seed, "rng seed");

    CLI::App* sw = app.add_subcommand("sweep", "q ladder sweep to CSV");
    sw->add_option("--alg", alg, "nao|ao|nah|ah")->required();
    sw->add_option("--dim", dim, "dimension d");
    sw->add_option("--q-ladder", ladder, "lo:hi:factor")->required();
    sw->add_option("--trials", trials, "trials per q");
    sw->add_option("--points", points, "point generator spec");
    sw->add_option("--delta", delta, "extreme oracle accuracy (auto|VALUE)");
    sw->add_option("--oracle", oracle, "exact|simulated|worst-shift");
    sw->add_option("--seed", seed, "rng seed");
    sw->add_option("--out", out, "output CSV path")->required();

    CLI::App* adv = app.add_subcommand("adversary", "lower-bound construction");
    adv->add_option("--alg", which, "nao|ao|nah|ah")->required();
    adv->add_option("--q", q, "query budget")->required();
    adv->add_option("--dim", dim, "dimension d");
    adv->add_option("--c", c_const, "separation constant (default 4d, 8 in 2-d)");
    adv->add_option("--out", out, "CSV file to append the summary row to");

    CLI::App* fit = app.add_subcommand("fit", "log-log slope of a sweep CSV");
    fit->add_option("csv", csv, "sweep CSV path")->required();
    fit->add_option("--x", xcol, "x column (default q)");
    fit->add_option("--y", ycol, "y column (default error)");

    CLI::App* gen = app.add_subcommand("gen", "write a point-set file");
    gen->add_option("--points", points, "uniform:n|circle:n|clustered:n")->required();
    gen->add_option("--dim", dim, "dimension d");
    gen->add_option("--seed", seed, "rng seed");
    gen->add_option("--out", out, "output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (run->parsed()) {
        TrialConfig cfg;
        cfg.alg = algo_from_name(alg);
        cfg.d = dim;
        cfg.q = q;
        cfg.points = PointGenSpec::parse(points);
        cfg.delta = parse_delta(delta);
        cfg.oracle = oracle_from_name(oracle);
        cfg.seed = seed;
        print_trial(run_trial(cfg));
    } else if (sw->parsed()) {
        SweepConfig cfg;
        cfg.alg = algo_from_name(alg);
        cfg.d = dim;
        cfg.q_ladder = parse_ladder(ladder);
        cfg.trials = trials;
        cfg.points = PointGenSpec::parse(points);
        cfg.delta = parse_delta(delta);
        cfg.oracle = oracle_from_name(oracle);
        cfg.seed = seed;
        cfg.out_path = out;
        sweep(cfg);
        std::cout << "wrote " << out << "\n";
    } else if (adv->parsed()) {
        if (c_const <= 0) c_const = dim == 2 ? 8.0 : 4.0 * dim;
        AdversaryDriveResult res = adversary_drive(which, q, dim, c_const);
        std::cout << res.report.serialize();
        if (!out.empty()) {
            bool fresh = !std::ifstream(out).good();
            std::ofstream f(out, std::ios::app);
            if (!f) throw Error("cannot append to " + out);
            if (fresh) f << kAdversaryCsvHeader << "\n";
            f << res.csv_row << "\n";
        }
    } else if (fit->parsed()) {
        SlopeFit f = fit_slope(csv, xcol, ycol);
        std::cout << "slope=" << fmt_real(f.slope) << "\n"
                  << "intercept=" << fmt_real(f.intercept) << "\n"
                  << "std_error=" << fmt_real(f.std_error) << "\n"
                  << "x_points=" << f.x_points << "\n"
                  << "excluded_zero_rows=" << f.excluded_zero_rows << "\n";
    } else if (gen->parsed()) {
        PointGenSpec spec = PointGenSpec::parse(points);
        if (spec.kind == PointGenSpec::Kind::File)
            throw Error("gen expects a generator spec, not file:");
        std::vector<Point> pts = generate_points(spec, dim, seed);
        save_point_set_file(out, pts, dim);
        std::cout << "wrote " << out << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const ohull::ConstructionFailedError& e) {
        std::cerr << "construction failed: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
