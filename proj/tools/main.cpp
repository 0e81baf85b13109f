// Command line front end: sample generation, optimization batches and
// post-hoc profiling over the produced logs.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>

#include "CLI11.hpp"
#include "json.hpp"

#include "mfo/bench.hpp"
#include "mfo/drivers.hpp"
#include "mfo/io.hpp"
#include "mfo/problems.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

std::string load_catalog(const std::string& path) {
    return path.empty() ? std::string() : mfo::read_file(path);
}

std::string output_dir_override(std::string configured) {
    if (const char* env = std::getenv("MFO_OUTPUT_DIR")) return env;
    return configured;
}

double truth_objective(const mfo::MultiFidelityProblem& problem, const mfo::Vec& x) {
    return problem.eval(x, problem.ladder().size()).f;
}

struct SampleArgs {
    std::string problem_id;
    std::string catalog_path;
    std::string out_path;
    std::string report_path;
    int count = 0;
    std::uint64_t seed = 0;
    double narrow = 1.0;
    std::vector<double> center;
    bool include_truth = false;
};

int cmd_sample(const SampleArgs& args) {
    if (args.count <= 0) {
        std::cerr << "sample: count must be positive\n";
        return kExitUsage;
    }
    auto problem = mfo::make_problem(args.problem_id, load_catalog(args.catalog_path));
    mfo::Vec lower = problem->lower(), upper = problem->upper();
    if (args.narrow < 1.0) {
        mfo::Vec center = args.center.empty()
                              ? mfo::Vec(problem->dimension(), 0.0)
                              : args.center;
        if (static_cast<int>(center.size()) != problem->dimension()) {
            std::cerr << "sample: center has wrong dimension\n";
            return kExitUsage;
        }
        std::tie(lower, upper) = mfo::narrow_bounds(*problem, center, args.narrow);
    }
    const auto H = mfo::lhs_sample(*problem, args.count, args.seed, lower, upper);
    mfo::atomic_write_file(args.out_path, mfo::render_sample(H));

    json report;
    report["problem"] = args.problem_id;
    report["seed"] = args.seed;
    report["count"] = args.count;
    report["file"] = args.out_path;
    try {
        mfo::SampleStats stats = mfo::compute_stats(H);
        mfo::SubproblemQ q = mfo::apply_cuts(
            mfo::make_subproblem(stats, mfo::PhiPolicy::Ids, args.include_truth));
        mfo::AssignmentVector a = mfo::solve_ids(q);
        report["i_of_j"] = stats.i_of_j;
        report["j_nu"] = stats.j_nu;
        report["assignment"] = a.entries;
        report["expected_cost"] = mfo::f_q(a, q);
    } catch (const std::runtime_error& e) {
        report["assignment_error"] = e.what();
    }
    const std::string text = report.dump(2) + "\n";
    if (args.report_path.empty())
        std::cout << text;
    else
        mfo::atomic_write_file(args.report_path, text);
    return 0;
}

std::string instance_name(const std::string& problem, std::uint64_t seed) {
    return problem + "-s" + std::to_string(seed);
}

int cmd_optimize(const std::string& config_path) {
    const json config = json::parse(mfo::read_file(config_path));
    const std::string catalog = load_catalog(config.value("catalog", ""));
    const std::string out_dir = output_dir_override(config.value("output_dir", "out"));
    const double budget = config.at("budget").get<double>();
    const int lhs_count = config.value("/lhs/count"_json_pointer, 2 * 11 + 2);
    const std::uint64_t lhs_offset = config.value("/lhs/seed_offset"_json_pointer, 0x5a17ULL);
    const double lhs_narrow = config.value("/lhs/bounds_factor"_json_pointer, 1.0);

    json summary;
    summary["config"] = config_path;
    summary["runs"] = json::array();
    bool all_ok = true;

    for (const auto& problem_id : config.at("problems")) {
        auto problem = mfo::make_problem(problem_id.get<std::string>(), catalog);
        for (const auto& seed_entry : config.at("seeds")) {
            const std::uint64_t seed = seed_entry.get<std::uint64_t>();
            // All algorithms of an instance share the sample and its best
            // point as the starting point, so sequences are comparable.
            mfo::Vec lower = problem->lower(), upper = problem->upper();
            if (lhs_narrow < 1.0)
                std::tie(lower, upper) = mfo::narrow_bounds(
                    *problem, mfo::Vec(problem->dimension(), 0.0), lhs_narrow);
            const auto H = mfo::lhs_sample(*problem, lhs_count,
                                           mfo::hash_mix(seed, lhs_offset), lower, upper);
            const mfo::Vec x0 = mfo::best_point_of(H);
            const double f_x0 = truth_objective(*problem, x0);

            for (const auto& algorithm_entry : config.at("algorithms")) {
                const mfo::Algorithm algorithm =
                    mfo::algorithm_from_name(algorithm_entry.get<std::string>());
                json run;
                run["problem"] = problem_id;
                run["algorithm"] = mfo::algorithm_name(algorithm);
                run["seed"] = seed;
                try {
                    mfo::RunSpec spec;
                    spec.algorithm = algorithm;
                    spec.problem_id = problem_id.get<std::string>();
                    spec.seed = seed;
                    spec.budget = budget;
                    spec.x0 = x0;
                    spec.sample = H;
                    const mfo::RunResult result = mfo::run(*problem, spec);

                    const mfo::RunLog log =
                        mfo::make_run_log(spec.problem_id, algorithm, seed, budget, f_x0,
                                          result, problem->ladder().size());
                    const std::string log_path =
                        (fs::path(out_dir) / (instance_name(spec.problem_id, seed) + "-" +
                                              mfo::algorithm_name(algorithm) + ".csv"))
                            .string();
                    mfo::atomic_write_file(log_path, mfo::render_run_log(log));

                    run["status"] = "ok";
                    run["log"] = log_path;
                    run["final_f"] = mfo::format_double(result.search.best_value);
                    run["feasible"] = !result.search.infeasible_start &&
                                      !std::isinf(result.search.best_value);
                    run["evaluations"] = result.search.evaluations;
                    run["total_cost"] = result.search.total_cost;
                    run["assignment"] = result.initial_assignment.entries;
                    json trace = json::array();
                    for (const mfo::AssignmentChange& change : result.assignment_trace)
                        trace.push_back({{"iteration", change.iteration},
                                         {"assignment", change.assignment.entries}});
                    run["assignment_trace"] = trace;
                } catch (const mfo::RequiresIntermediaryError& e) {
                    run["status"] = "requires-intermediary";
                    run["error"] = e.what();
                    all_ok = false;
                } catch (const std::exception& e) {
                    run["status"] = "failed";
                    run["error"] = e.what();
                    all_ok = false;
                }
                summary["runs"].push_back(std::move(run));
            }
        }
    }
    mfo::atomic_write_file((fs::path(out_dir) / "summary.json").string(),
                           summary.dump(2) + "\n");
    return all_ok ? 0 : kExitRuntime;
}

int cmd_profile(const std::string& logs_dir, const std::string& out_dir,
                std::vector<double> taus, int grid_points, const std::string& catalog_path) {
    std::vector<mfo::RunLog> logs;
    if (fs::is_directory(logs_dir))
        for (const auto& entry : fs::directory_iterator(logs_dir))
            if (entry.path().extension() == ".csv") {
                const std::string content = mfo::read_file(entry.path().string());
                if (content.rfind("# mfo-log v1", 0) == 0)
                    logs.push_back(mfo::parse_run_log(content));
            }
    if (logs.empty()) {
        std::cerr << "profile: no run logs found in " << logs_dir << "\n";
        return kExitRuntime;
    }
    std::sort(logs.begin(), logs.end(), [](const mfo::RunLog& a, const mfo::RunLog& b) {
        return std::tie(a.problem, a.seed, a.algorithm) <
               std::tie(b.problem, b.seed, b.algorithm);
    });

    std::map<std::string, mfo::InstanceTraces> instances;
    for (const mfo::RunLog& log : logs) {
        mfo::InstanceTraces& inst = instances[instance_name(log.problem, log.seed)];
        inst.instance = instance_name(log.problem, log.seed);
        inst.f_x0 = log.f_x0;
        inst.by_algorithm[log.algorithm] = mfo::trace_of(log);
    }
    std::vector<mfo::InstanceTraces> inputs;
    for (auto& [name, inst] : instances) inputs.push_back(std::move(inst));

    const std::vector<double> grid = mfo::default_grid(inputs, grid_points);
    for (double tau : taus) {
        const mfo::DataProfile profile = mfo::data_profile(inputs, tau, grid);
        char short_tau[32];
        std::snprintf(short_tau, sizeof short_tau, "%g", tau);
        const std::string path =
            (fs::path(out_dir) / ("profile-tau" + std::string(short_tau) + ".csv")).string();
        mfo::atomic_write_file(path, mfo::render_profile_csv(profile, tau));
    }

    // Fidelity histograms need the ladder length; take it from the catalog.
    const std::string catalog = load_catalog(catalog_path);
    std::map<std::string, std::vector<int>> indices_by_algorithm;
    std::map<std::string, std::string> problem_of;
    for (const mfo::RunLog& log : logs) {
        auto idx = mfo::last_indices_of(log);
        auto& dst = indices_by_algorithm[log.algorithm];
        dst.insert(dst.end(), idx.begin(), idx.end());
        problem_of[log.algorithm] = log.problem;
    }
    std::vector<std::pair<std::string, std::vector<double>>> hist_rows;
    std::vector<double> phi;
    for (const auto& [name, indices] : indices_by_algorithm) {
        auto problem = mfo::make_problem(problem_of[name], catalog);
        phi = problem->ladder().values();
        hist_rows.emplace_back(name, mfo::fidelity_histogram(indices, problem->ladder().size()));
    }
    mfo::atomic_write_file((fs::path(out_dir) / "histogram.csv").string(),
                           mfo::render_histogram_csv(hist_rows, phi));

    std::vector<mfo::ComparisonRow> comparisons;
    for (const auto& [name, inst] : instances) {
        std::map<std::string, std::vector<mfo::Vec>> points;
        for (const mfo::RunLog& log : logs)
            if (instance_name(log.problem, log.seed) == name)
                points[log.algorithm] = mfo::points_of(log);
        auto base = points.find("base");
        if (base == points.end()) continue;
        for (const auto& [algorithm, pts] : points) {
            if (algorithm == "base") continue;
            comparisons.push_back({name, algorithm, mfo::sequence_compare(base->second, pts)});
        }
    }
    mfo::atomic_write_file((fs::path(out_dir) / "comparison.csv").string(),
                           mfo::render_comparison_csv(comparisons));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-fidelity constrained optimization toolkit"};
    app.require_subcommand(1);

    SampleArgs sample_args;
    CLI::App* sample = app.add_subcommand("sample", "Draw and evaluate a Latin Hypercube sample");
    sample->add_option("--problem", sample_args.problem_id)->required();
    sample->add_option("--count", sample_args.count)->required();
    sample->add_option("--seed", sample_args.seed)->required();
    sample->add_option("--out", sample_args.out_path)->required();
    sample->add_option("--catalog", sample_args.catalog_path);
    sample->add_option("--report", sample_args.report_path);
    sample->add_option("--narrow", sample_args.narrow);
    sample->add_option("--center", sample_args.center);
    sample->add_flag("--include-truth", sample_args.include_truth);

    std::string optimize_config;
    CLI::App* optimize = app.add_subcommand("optimize", "Run an optimization batch from a config");
    optimize->add_option("--config", optimize_config)->required();

    std::string logs_dir, profile_out, profile_catalog;
    std::vector<double> taus{0.01};
    int grid_points = 200;
    CLI::App* profile = app.add_subcommand("profile", "Build profiles from run logs");
    profile->add_option("--logs", logs_dir)->required();
    profile->add_option("--out", profile_out)->required();
    profile->add_option("--tau", taus);
    profile->add_option("--grid-points", grid_points);
    profile->add_option("--catalog", profile_catalog);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sample->parsed()) return cmd_sample(sample_args);
        if (optimize->parsed()) return cmd_optimize(optimize_config);
        if (profile->parsed())
            return cmd_profile(logs_dir, output_dir_override(profile_out), taus, grid_points,
                               profile_catalog);
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const mfo::UnknownProblemError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
