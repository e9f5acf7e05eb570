#pragma once

#include <json.hpp>

#include "lvann/dataset.hpp"
#include "lvann/index.hpp"
#include "lvann/planner.hpp"

namespace lvann {

using Json = nlohmann::ordered_json;

Json plan_to_json(const ReductionPlan& plan);
Json stats_to_json(const QueryStats& stats);

struct BenchConfig {
    IndexVariant variant = IndexVariant::kFastPre;
    bool audit = false;
    std::size_t enum_budget = kDefaultEnumBudget;
    double ingest_scale = 1.0;
};

/// Builds the index, runs every query, and emits the "lvann-report-v1"
/// document: plan echo, per-query stat aggregates, the optional oracle
/// audit, and the empirical-vs-analytic tail table. Everything outside the
/// "timings" object is deterministic for fixed inputs.
Json run_bench(const Dataset& dataset, const Matrix& queries, const ReductionPlan& plan,
               const BenchConfig& config);

}  // namespace lvann
