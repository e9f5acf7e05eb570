// Command-line front end: dataset ingestion, index build/query, empirical
// verification of the reduction tail bound, and the benchmark report.
//
// Exit codes: 0 success, 2 parse error, 3 enumeration budget exceeded,
// 4 invalid parameters.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "lvann/index.hpp"
#include "lvann/io.hpp"
#include "lvann/oracle.hpp"
#include "lvann/planner.hpp"
#include "lvann/report.hpp"
#include "lvann/verify.hpp"

namespace {

using lvann::Json;

std::size_t enum_budget_from_env() {
    const char* env = std::getenv("LVANN_ENUM_BUDGET");
    if (env == nullptr || *env == '\0') {
        return lvann::kDefaultEnumBudget;
    }
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || value == 0) {
        throw std::invalid_argument("LVANN_ENUM_BUDGET must be a positive integer");
    }
    return static_cast<std::size_t>(value);
}

struct IngestFlags {
    std::string path;
    std::string format = "fvecs";
    bool id_column = false;
    double radius = 1.0;
};

// Normalizes the search radius to 1 by rescaling every coordinate by
// 1/radius at ingestion; distances reported to the user are scaled back.
lvann::Dataset ingest_dataset(const IngestFlags& flags) {
    lvann::LoadedPoints loaded =
        lvann::load_points(flags.path, flags.format, flags.id_column);
    if (flags.radius != 1.0) {
        for (double& v : loaded.points.data()) {
            v /= flags.radius;
        }
    }
    try {
        if (loaded.ids.empty()) {
            return lvann::Dataset::with_default_ids(std::move(loaded.points));
        }
        return lvann::Dataset(std::move(loaded.points), std::move(loaded.ids));
    } catch (const std::invalid_argument& e) {
        throw lvann::ParseError("input '" + flags.path + "' is not a valid dataset: " +
                                e.what());
    }
}

lvann::Matrix ingest_queries(const std::string& path, const std::string& format,
                             double scale) {
    lvann::Matrix queries = lvann::load_points(path, format, /*id_column=*/false).points;
    if (scale != 1.0) {
        for (double& v : queries.data()) {
            v /= scale;
        }
    }
    return queries;
}

struct PlanFlags {
    double c = 2.0;
    double nu = 0.0;
    std::uint64_t seed = 0;
    std::optional<std::size_t> k_override;
    std::optional<double> grid_side_override;
};

lvann::ReductionPlan plan_from_flags(std::size_t n, std::size_t d, const PlanFlags& flags) {
    lvann::PlanOverrides overrides;
    overrides.k = flags.k_override;
    overrides.grid_side = flags.grid_side_override;
    return lvann::make_plan(n, d, flags.c, flags.nu, flags.seed, overrides);
}

void add_plan_flags(CLI::App* cmd, PlanFlags& flags) {
    cmd->add_option("--c", flags.c, "Approximation factor c > 1");
    cmd->add_option("--nu", flags.nu, "Query/pre-processing trade-off in [0,1)");
    cmd->add_option("--seed", flags.seed, "Seed for the random basis");
    cmd->add_option("--k-override", flags.k_override, "Force the reduced dimension k");
    cmd->add_option("--grid-side-override", flags.grid_side_override,
                    "Force the grid cell side");
}

void add_input_flags(CLI::App* cmd, IngestFlags& flags, bool with_radius) {
    cmd->add_option("--input", flags.path, "Input points")->required();
    cmd->add_option("--format", flags.format, "fvecs or csv")
        ->check(CLI::IsMember({"fvecs", "csv"}));
    cmd->add_flag("--id-column", flags.id_column, "csv only: leading integer id column");
    if (with_radius) {
        cmd->add_option("--radius", flags.radius, "Query radius R (inputs are rescaled by 1/R)")
            ->check(CLI::PositiveNumber);
    }
}

Json query_result_to_json(std::size_t index, const lvann::QueryResult& result,
                          double scale, bool all) {
    Json j{{"query", index}};
    if (result.hit) {
        j["hit"] = Json{{"id", result.hit->id}, {"distance", result.hit->distance * scale}};
    } else {
        j["hit"] = nullptr;
    }
    if (all) {
        Json hits = Json::array();
        for (const lvann::Hit& h : result.all_hits) {
            hits.push_back(Json{{"id", h.id}, {"distance", h.distance * scale}});
        }
        j["hits"] = hits;
    }
    j["stats"] = lvann::stats_to_json(result.stats);
    return j;
}

int run(int argc, char** argv) {
    CLI::App app{"Las Vegas c-approximate near-neighbor search over Euclidean data"};
    app.require_subcommand(1);

    // build
    auto* build = app.add_subcommand("build", "Build an index and write it to disk");
    IngestFlags build_input;
    PlanFlags build_plan;
    std::string build_variant = "fast-pre";
    std::string build_out;
    add_input_flags(build, build_input, /*with_radius=*/true);
    add_plan_flags(build, build_plan);
    build->add_option("--variant", build_variant, "fast-query or fast-pre")
        ->check(CLI::IsMember({"fast-query", "fast-pre"}));
    build->add_option("--out", build_out, "Output index path")->required();

    // query
    auto* query = app.add_subcommand("query", "Answer queries against a stored index");
    std::string query_index_path, query_path, query_format = "fvecs";
    bool query_batch = true, query_all = false;
    query->add_option("--index", query_index_path, "Index container path")->required();
    query->add_option("--queries", query_path, "Query points")->required();
    query->add_option("--format", query_format, "fvecs or csv")
        ->check(CLI::IsMember({"fvecs", "csv"}));
    query->add_flag("--batch,!--no-batch", query_batch,
                    "Project all queries with one matrix product (default on)");
    query->add_flag("--all", query_all, "Report every qualifying point, not just one");

    // verify-lemma
    auto* verify = app.add_subcommand(
        "verify-lemma", "Empirically audit the reduction tail bound and coverage");
    std::size_t vl_d = 128, vl_k = 16, vl_trials = 100000;
    double vl_c = 3.0, vl_alpha = 1.2;
    std::uint64_t vl_seed = 0;
    verify->add_option("--d", vl_d, "Ambient dimension");
    verify->add_option("--k", vl_k, "Block dimension (must divide d)");
    verify->add_option("--c", vl_c, "Norm of the sampled far vectors");
    verify->add_option("--alpha", vl_alpha, "Threshold in reduced space");
    verify->add_option("--trials", vl_trials, "Sample count");
    verify->add_option("--seed", vl_seed, "Basis seed");

    // bench
    auto* bench = app.add_subcommand("bench", "Build, query, and emit a benchmark report");
    IngestFlags bench_input;
    PlanFlags bench_plan;
    std::string bench_queries, bench_variant = "fast-pre", bench_out;
    bool bench_audit = false;
    add_input_flags(bench, bench_input, /*with_radius=*/true);
    add_plan_flags(bench, bench_plan);
    bench->add_option("--queries", bench_queries, "Query points")->required();
    bench->add_option("--variant", bench_variant, "fast-query or fast-pre")
        ->check(CLI::IsMember({"fast-query", "fast-pre"}));
    bench->add_flag("--audit", bench_audit,
                    "Cross-check every query against the linear-scan oracle");
    bench->add_option("--out", bench_out, "Also write the report to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 4;
    }

    const std::size_t enum_budget = enum_budget_from_env();

    if (build->parsed()) {
        const lvann::Dataset dataset = ingest_dataset(build_input);
        const lvann::ReductionPlan plan =
            plan_from_flags(dataset.size(), dataset.dim(), build_plan);
        const lvann::NeighborIndex index = lvann::NeighborIndex::build(
            dataset, plan, lvann::variant_from_string(build_variant), {enum_budget});
        lvann::save_index(index, build_out, build_input.radius);
        Json out{
            {"plan", lvann::plan_to_json(plan)},
            {"variant", build_variant},
            {"ingest_scale", build_input.radius},
            {"build", Json{{"cells_inserted", index.build_stats().cells_inserted},
                           {"wall_time_s", index.build_stats().wall_time_s}}},
            {"diagnostics",
             Json{{"expected_false_positives_per_block",
                   lvann::expected_false_positives_per_block(plan, dataset.size())}}},
            {"output", build_out},
        };
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    if (query->parsed()) {
        lvann::LoadedIndex loaded = lvann::load_index(query_index_path);
        const lvann::Matrix queries =
            ingest_queries(query_path, query_format, loaded.ingest_scale);
        lvann::QueryOptions options;
        options.return_all = query_all;
        options.enum_budget = enum_budget;
        std::vector<lvann::QueryResult> results;
        if (query_batch) {
            results = loaded.index.query_batch(queries, options);
        } else {
            results.reserve(queries.rows());
            for (std::size_t i = 0; i < queries.rows(); ++i) {
                results.push_back(loaded.index.query(queries.row(i), options));
            }
        }
        for (std::size_t i = 0; i < results.size(); ++i) {
            std::cout << query_result_to_json(i, results[i], loaded.ingest_scale, query_all)
                             .dump()
                      << "\n";
        }
        return 0;
    }

    if (verify->parsed()) {
        const lvann::LemmaCheck check =
            lvann::verify_reduction_lemma(vl_d, vl_k, vl_c, vl_alpha, vl_trials, vl_seed);
        Json out{
            {"d", check.d},
            {"k", check.k},
            {"c", check.c},
            {"alpha", check.alpha},
            {"trials", check.trials},
            {"seed", check.seed},
            {"tail", Json{{"hits", check.tail_hits},
                          {"empirical", check.empirical_tail},
                          {"analytic_bound", check.analytic_tail}}},
            {"coverage", Json{{"violations", check.coverage_violations},
                              {"bound", "min block norm <= 1 + 1e-9"}}},
        };
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    // bench
    const lvann::Dataset dataset = ingest_dataset(bench_input);
    const lvann::Matrix queries =
        ingest_queries(bench_queries, bench_input.format, bench_input.radius);
    const lvann::ReductionPlan plan =
        plan_from_flags(dataset.size(), dataset.dim(), bench_plan);
    lvann::BenchConfig config;
    config.variant = lvann::variant_from_string(bench_variant);
    config.audit = bench_audit;
    config.enum_budget = enum_budget;
    config.ingest_scale = bench_input.radius;
    const Json report = lvann::run_bench(dataset, queries, plan, config);
    if (!bench_out.empty()) {
        std::ofstream out(bench_out, std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open '" + bench_out + "' for writing");
        }
        out << report.dump(2) << "\n";
    }
    std::cout << report.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const lvann::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const lvann::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n"
                  << "hint: switch to --variant fast-pre or raise --grid-side-override\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
