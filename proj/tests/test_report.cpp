#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "lvann/oracle.hpp"
#include "lvann/report.hpp"
#include "lvann/verify.hpp"

using namespace lvann;

namespace {

void collect_paths(const Json& node, const std::string& prefix,
                   std::vector<std::string>& out) {
    if (node.is_object()) {
        for (const auto& [key, value] : node.items()) {
            collect_paths(value, prefix.empty() ? key : prefix + "." + key, out);
        }
    } else if (node.is_array()) {
        if (!node.empty()) {
            collect_paths(node.front(), prefix + "[]", out);
        }
    } else {
        out.push_back(prefix);
    }
}

Json tiny_report(std::uint64_t seed, bool audit) {
    const PlantedInstance inst = plant_instance(60, 8, 10, 6, 1.0, 2.0, seed);
    PlanOverrides overrides;
    overrides.k = 4;
    overrides.grid_side = 0.75;
    const ReductionPlan plan = make_plan(60, 8, 2.0, 0.0, seed, overrides);
    BenchConfig config;
    config.variant = IndexVariant::kFastPre;
    config.audit = audit;
    return run_bench(inst.dataset, inst.queries, plan, config);
}

}  // namespace

TEST_CASE("report schema is stable (golden key list)") {
    const Json report = tiny_report(5, /*audit=*/true);
    std::vector<std::string> paths;
    collect_paths(report, "", paths);
    std::sort(paths.begin(), paths.end());

    const std::vector<std::string> golden = {
        "audit.answered",
        "audit.enabled",
        "audit.missed",
        "audit.queries_with_neighbor_within_radius",
        "audit.soundness_violations",
        "build.cells_inserted",
        "parameters.dim",
        "parameters.enum_budget",
        "parameters.expected_false_positives_per_block",
        "parameters.ingest_scale",
        "parameters.n",
        "parameters.num_queries",
        "parameters.plan.alpha",
        "parameters.plan.c",
        "parameters.plan.epsilon",
        "parameters.plan.gamma",
        "parameters.plan.grid_side",
        "parameters.plan.k",
        "parameters.plan.nu",
        "parameters.plan.num_blocks",
        "parameters.plan.padded_dim",
        "parameters.plan.radius",
        "parameters.plan.reduced",
        "parameters.plan.seed",
        "parameters.variant",
        "query_stats.candidates.max",
        "query_stats.candidates.mean",
        "query_stats.candidates.median",
        "query_stats.cells_visited.max",
        "query_stats.cells_visited.mean",
        "query_stats.cells_visited.median",
        "query_stats.false_positives.max",
        "query_stats.false_positives.mean",
        "query_stats.false_positives.median",
        "query_stats.hits",
        "query_stats.misses",
        "schema",
        "tail_bound_table[].alpha",
        "tail_bound_table[].analytic_bound",
        "tail_bound_table[].empirical",
        "tail_bound_table[].events",
        "tail_bound_table[].far_pairs",
        "timings.build_seconds",
        "timings.query_max_ms",
        "timings.query_mean_ms",
        "timings.query_median_ms",
        "timings.total_seconds",
    };
    CHECK(paths == golden);
    CHECK(report["schema"] == "lvann-report-v1");
}

TEST_CASE("report is deterministic outside the timings object") {
    Json a = tiny_report(9, true);
    Json b = tiny_report(9, true);
    a.erase("timings");
    b.erase("timings");
    CHECK(a == b);
}

TEST_CASE("audit passes on planted instances") {
    const Json report = tiny_report(21, true);
    CHECK(report["audit"]["missed"] == 0);
    CHECK(report["audit"]["soundness_violations"] == 0);
    CHECK(report["audit"]["queries_with_neighbor_within_radius"].get<std::size_t>() >= 6);
    CHECK(report["query_stats"]["hits"].get<std::size_t>() >= 6);
}

TEST_CASE("tail table empiricals stay under the analytic bounds") {
    const Json report = tiny_report(33, false);
    for (const Json& row : report["tail_bound_table"]) {
        if (row["far_pairs"].get<std::size_t>() == 0) {
            continue;
        }
        // the analytic value is an upper bound; allow generous sampling slack
        CHECK(row["empirical"].get<double>() <=
              2.0 * row["analytic_bound"].get<double>() + 0.05);
    }
}

TEST_CASE("verify_reduction_lemma") {
    const LemmaCheck check = verify_reduction_lemma(32, 8, 3.0, 1.2, 2000, 17);
    CHECK(check.coverage_violations == 0);
    CHECK(check.empirical_tail <= 2.0 * check.analytic_tail + 0.01);
    CHECK(check.analytic_tail == doctest::Approx(tail_bound(8, 1.2, 3.0)));

    SUBCASE("alpha = c saturates the analytic bound at 1") {
        const LemmaCheck sat = verify_reduction_lemma(16, 4, 2.0, 2.0, 500, 3);
        CHECK(sat.analytic_tail == 1.0);
        CHECK(sat.empirical_tail <= 1.0);
    }

    SUBCASE("deterministic under fixed arguments") {
        const LemmaCheck a = verify_reduction_lemma(16, 4, 2.0, 1.2, 1000, 5);
        const LemmaCheck b = verify_reduction_lemma(16, 4, 2.0, 1.2, 1000, 5);
        CHECK(a.tail_hits == b.tail_hits);
        CHECK(a.coverage_violations == b.coverage_violations);
    }

    SUBCASE("k must divide d") {
        CHECK_THROWS_AS(verify_reduction_lemma(10, 3, 2.0, 1.2, 10, 1),
                        std::invalid_argument);
        CHECK_THROWS_AS(verify_reduction_lemma(8, 16, 2.0, 1.2, 10, 1),
                        std::invalid_argument);
    }
}
