#include "lvann/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "lvann/oracle.hpp"

namespace lvann {

namespace {

struct Aggregate {
    double mean = 0.0;
    double median = 0.0;
    double max = 0.0;
};

Aggregate aggregate(std::vector<double> values) {
    Aggregate a;
    if (values.empty()) {
        return a;
    }
    double sum = 0.0;
    for (double v : values) {
        sum += v;
        a.max = std::max(a.max, v);
    }
    a.mean = sum / static_cast<double>(values.size());
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    a.median = values.size() % 2 == 1 ? values[mid]
                                      : 0.5 * (values[mid - 1] + values[mid]);
    return a;
}

Json to_json(const Aggregate& a) {
    return Json{{"mean", a.mean}, {"median", a.median}, {"max", a.max}};
}

// Empirical P[block image <= alpha * R] over far (distance > c*R) pairs,
// next to the analytic tail bound at the same level.
Json tail_table(const Dataset& dataset, const Matrix& queries, const ReductionPlan& plan,
                const OrthonormalBasis& basis) {
    constexpr std::size_t kMaxPairs = 200'000;
    const double far = plan.c * plan.radius;
    const ProjectedBatch points =
        project_batch(pad_columns(dataset.points(), plan.padded_dim), basis, plan.k);
    const ProjectedBatch qs =
        project_batch(pad_columns(queries, plan.padded_dim), basis, plan.k);

    const double root_k = std::sqrt(static_cast<double>(plan.k));
    const std::vector<double> levels = {plan.alpha, 1.0 + plan.grid_side * root_k,
                                        1.0 + 2.0 * plan.grid_side * root_k};

    std::size_t pairs = 0;
    std::vector<std::uint64_t> events(levels.size(), 0);
    for (std::size_t qi = 0; qi < queries.rows() && pairs < kMaxPairs; ++qi) {
        for (std::size_t pi = 0; pi < dataset.size() && pairs < kMaxPairs; ++pi) {
            if (!(euclidean_distance(queries.row(qi), dataset.point(pi)) > far)) {
                continue;
            }
            ++pairs;
            for (std::size_t b = 0; b < plan.num_blocks; ++b) {
                const double dist =
                    euclidean_distance(qs.block(qi, b), points.block(pi, b));
                for (std::size_t L = 0; L < levels.size(); ++L) {
                    if (dist <= levels[L] * plan.radius) {
                        ++events[L];
                    }
                }
            }
        }
    }

    Json rows = Json::array();
    const double trials = static_cast<double>(pairs * plan.num_blocks);
    for (std::size_t L = 0; L < levels.size(); ++L) {
        rows.push_back(Json{
            {"alpha", levels[L]},
            {"far_pairs", pairs},
            {"events", events[L]},
            {"empirical", trials > 0.0 ? static_cast<double>(events[L]) / trials : 0.0},
            {"analytic_bound", tail_bound(plan.k, levels[L], plan.c)},
        });
    }
    return rows;
}

}  // namespace

Json plan_to_json(const ReductionPlan& plan) {
    return Json{
        {"c", plan.c},
        {"epsilon", plan.epsilon},
        {"alpha", plan.alpha},
        {"nu", plan.nu},
        {"gamma", plan.gamma},
        {"k", plan.k},
        {"num_blocks", plan.num_blocks},
        {"padded_dim", plan.padded_dim},
        {"radius", plan.radius},
        {"grid_side", plan.grid_side},
        {"seed", plan.seed},
        {"reduced", plan.reduced},
    };
}

Json stats_to_json(const QueryStats& stats) {
    return Json{
        {"candidates_examined", stats.candidates_examined},
        {"false_positives", stats.false_positives},
        {"blocks_touched", stats.blocks_touched},
        {"cells_visited", stats.cells_visited},
    };
}

Json run_bench(const Dataset& dataset, const Matrix& queries, const ReductionPlan& plan,
               const BenchConfig& config) {
    const auto t_start = std::chrono::steady_clock::now();
    const NeighborIndex index =
        NeighborIndex::build(dataset, plan, config.variant, {config.enum_budget});

    QueryOptions qopts;
    qopts.enum_budget = config.enum_budget;
    const std::size_t m = queries.rows();
    std::vector<QueryResult> results(m);
    std::vector<double> query_ms(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        results[i] = index.query(queries.row(i), qopts);
        query_ms[i] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
    }

    std::vector<double> candidates(m), false_positives(m), cells(m);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < m; ++i) {
        candidates[i] = static_cast<double>(results[i].stats.candidates_examined);
        false_positives[i] = static_cast<double>(results[i].stats.false_positives);
        cells[i] = static_cast<double>(results[i].stats.cells_visited);
        if (results[i].hit) {
            ++hits;
        }
    }

    Json audit{{"enabled", config.audit}};
    if (config.audit) {
        // Every query whose true nearest point lies within R must come back
        // with a hit no farther than c*R.
        const double c_r = plan.c * plan.radius;
        std::size_t with_neighbor = 0, answered = 0, missed = 0, unsound = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const bool has_neighbor =
                !linear_scan(dataset, queries.row(i), plan.radius).empty();
            if (has_neighbor) {
                ++with_neighbor;
                if (results[i].hit && results[i].hit->distance <= c_r) {
                    ++answered;
                } else {
                    ++missed;
                }
            }
            if (results[i].hit && !(results[i].hit->distance <= c_r)) {
                ++unsound;
            }
        }
        audit["queries_with_neighbor_within_radius"] = with_neighbor;
        audit["answered"] = answered;
        audit["missed"] = missed;
        audit["soundness_violations"] = unsound;
    }

    const double total_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    const Aggregate time_agg = aggregate(query_ms);

    return Json{
        {"schema", "lvann-report-v1"},
        {"parameters",
         Json{{"variant", to_string(config.variant)},
              {"n", dataset.size()},
              {"dim", dataset.dim()},
              {"num_queries", m},
              {"ingest_scale", config.ingest_scale},
              {"enum_budget", config.enum_budget},
              {"plan", plan_to_json(plan)},
              {"expected_false_positives_per_block",
               expected_false_positives_per_block(plan, dataset.size())}}},
        {"build", Json{{"cells_inserted", index.build_stats().cells_inserted}}},
        {"query_stats", Json{{"hits", hits},
                             {"misses", m - hits},
                             {"candidates", to_json(aggregate(std::move(candidates)))},
                             {"false_positives",
                              to_json(aggregate(std::move(false_positives)))},
                             {"cells_visited", to_json(aggregate(std::move(cells)))}}},
        {"audit", audit},
        {"tail_bound_table", tail_table(dataset, queries, plan, index.basis())},
        {"timings", Json{{"build_seconds", index.build_stats().wall_time_s},
                         {"query_mean_ms", time_agg.mean},
                         {"query_median_ms", time_agg.median},
                         {"query_max_ms", time_agg.max},
                         {"total_seconds", total_s}}},
    };
}

}  // namespace lvann
