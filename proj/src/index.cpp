#include "lvann/index.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace lvann {

namespace {

// Enumeration radii are inflated by a hair so that a true neighbor sitting
// exactly on a cell-gap boundary cannot be lost to rounding. Over-inclusion
// only adds candidates, which the exact check removes; both variants use the
// same inflated radius, so their candidate sets stay identical.
constexpr double kEnumSlack = 1e-12;

double enumeration_radius(const ReductionPlan& plan) {
    return plan.radius * (1.0 + kEnumSlack);
}

void validate_plan(const ReductionPlan& plan, std::size_t dim) {
    if (plan.k == 0 || plan.num_blocks == 0 ||
        plan.num_blocks * plan.k != plan.padded_dim) {
        throw std::invalid_argument("NeighborIndex: malformed plan");
    }
    const std::size_t expected_padded = ((dim + plan.k - 1) / plan.k) * plan.k;
    if (plan.padded_dim != expected_padded) {
        throw std::invalid_argument("NeighborIndex: plan was made for a different dimension");
    }
    if (!(plan.grid_side > 0.0) || !(plan.radius > 0.0)) {
        throw std::invalid_argument("NeighborIndex: plan needs positive radius and grid side");
    }
}

void rethrow_first(std::vector<std::exception_ptr>& errors) {
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace

const char* to_string(IndexVariant variant) {
    return variant == IndexVariant::kFastQuery ? "fast-query" : "fast-pre";
}

IndexVariant variant_from_string(const std::string& name) {
    if (name == "fast-query") return IndexVariant::kFastQuery;
    if (name == "fast-pre") return IndexVariant::kFastPre;
    throw std::invalid_argument("unknown index variant '" + name + "'");
}

FilterOutcome exact_filter(std::span<const std::int64_t> candidate_ids,
                           std::span<const double> q, const Dataset& dataset, double c_r,
                           bool return_all) {
    FilterOutcome out;
    for (std::int64_t id : candidate_ids) {
        const double dist = euclidean_distance(dataset.point(dataset.row_of(id)), q);
        ++out.examined;
        if (dist <= c_r) {
            if (!out.first) {
                out.first = Hit{id, dist};
            }
            if (!return_all) {
                break;
            }
            out.all.push_back(Hit{id, dist});
        } else {
            ++out.rejected;
        }
    }
    return out;
}

NeighborIndex::NeighborIndex(IndexVariant variant, ReductionPlan plan,
                             OrthonormalBasis basis, Dataset dataset)
    : variant_(variant),
      plan_(std::move(plan)),
      basis_(std::move(basis)),
      dataset_(std::move(dataset)) {}

NeighborIndex NeighborIndex::build(const Dataset& dataset, const ReductionPlan& plan,
                                   IndexVariant variant, const BuildOptions& options) {
    validate_plan(plan, dataset.dim());
    const auto t0 = std::chrono::steady_clock::now();

    NeighborIndex index(variant, plan,
                        random_orthonormal_basis(plan.padded_dim, plan.seed), dataset);
    const Matrix padded = pad_columns(dataset.points(), plan.padded_dim);
    const ProjectedBatch projected = project_batch(padded, index.basis_, plan.k);
    const std::size_t n = dataset.size();
    const double side = plan.grid_side;
    const double enum_radius = enumeration_radius(plan);

    index.tables_.resize(plan.num_blocks);
    std::uint64_t inserted = 0;

    // One block at a time: the enumeration work is parallel over points,
    // the table inserts run in point order so the structure never depends
    // on scheduling.
    for (std::size_t b = 0; b < plan.num_blocks; ++b) {
        CellTable& table = index.tables_[b];
        std::vector<std::exception_ptr> errors(n);
        if (variant == IndexVariant::kFastPre) {
            std::vector<CellId> cells(n);
#pragma omp parallel for schedule(static)
            for (std::int64_t j = 0; j < static_cast<std::int64_t>(n); ++j) {
                try {
                    cells[j] = quantize(projected.block(j, b), side);
                } catch (...) {
                    errors[j] = std::current_exception();
                }
            }
            rethrow_first(errors);
            for (std::size_t j = 0; j < n; ++j) {
                table[std::move(cells[j])].push_back(dataset.id(j));
                ++inserted;
            }
        } else {
            std::vector<std::vector<CellId>> covers(n);
#pragma omp parallel for schedule(dynamic, 16)
            for (std::int64_t j = 0; j < static_cast<std::int64_t>(n); ++j) {
                try {
                    covers[j] = cell_neighborhood(quantize(projected.block(j, b), side),
                                                  enum_radius, side, options.enum_budget);
                } catch (...) {
                    errors[j] = std::current_exception();
                }
            }
            rethrow_first(errors);
            for (std::size_t j = 0; j < n; ++j) {
                const std::int64_t id = dataset.id(j);
                for (CellId& cell : covers[j]) {
                    table[std::move(cell)].push_back(id);
                    ++inserted;
                }
                covers[j].clear();
                covers[j].shrink_to_fit();
            }
        }
        for (auto& [cell, bucket] : table) {
            std::sort(bucket.begin(), bucket.end());
        }
    }

    index.stats_.cells_inserted = inserted;
    index.stats_.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return index;
}

ProjectedBatch NeighborIndex::project_queries(const Matrix& queries) const {
    if (queries.rows() == 0) {
        throw std::invalid_argument("query_batch: need at least one query");
    }
    if (queries.cols() != dataset_.dim()) {
        throw std::invalid_argument("query: dimension mismatch (expected " +
                                    std::to_string(dataset_.dim()) + ", got " +
                                    std::to_string(queries.cols()) + ")");
    }
    for (double v : queries.data()) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("query: coordinates must be finite");
        }
    }
    return project_batch(pad_columns(queries, plan_.padded_dim), basis_, plan_.k);
}

NeighborIndex::CandidateScan NeighborIndex::collect_candidates(
    const ProjectedBatch& projected, std::size_t row, std::size_t enum_budget,
    bool keep_per_block) const {
    CandidateScan scan;
    if (keep_per_block) {
        scan.per_block.resize(plan_.num_blocks);
    }
    const double side = plan_.grid_side;
    const double enum_radius = enumeration_radius(plan_);
    CellId scratch;

    for (std::size_t b = 0; b < plan_.num_blocks; ++b) {
        const CellTable& table = tables_[b];
        std::size_t before = scan.merged.size();
        if (variant_ == IndexVariant::kFastQuery) {
            // The covers were enumerated at build time; one lookup suffices.
            scratch = quantize(projected.block(row, b), side);
            ++scan.cells_visited;
            if (auto it = table.find(scratch); it != table.end()) {
                scan.merged.insert(scan.merged.end(), it->second.begin(), it->second.end());
            }
        } else {
            const CellId center = quantize(projected.block(row, b), side);
            for_each_cell_near_cell(
                center, enum_radius, side, enum_budget,
                [&](std::span<const std::int64_t> coords) {
                    ++scan.cells_visited;
                    scratch.coords.assign(coords.begin(), coords.end());
                    if (auto it = table.find(scratch); it != table.end()) {
                        scan.merged.insert(scan.merged.end(), it->second.begin(),
                                           it->second.end());
                    }
                });
        }
        if (keep_per_block) {
            auto& set = scan.per_block[b];
            set.assign(scan.merged.begin() + before, scan.merged.end());
            std::sort(set.begin(), set.end());
            set.erase(std::unique(set.begin(), set.end()), set.end());
        }
    }
    std::sort(scan.merged.begin(), scan.merged.end());
    scan.merged.erase(std::unique(scan.merged.begin(), scan.merged.end()),
                      scan.merged.end());
    return scan;
}

QueryResult NeighborIndex::query(std::span<const double> q,
                                 const QueryOptions& options) const {
    Matrix one(1, q.size());
    std::copy(q.begin(), q.end(), one.row_ptr(0));
    return query_batch(one, options).front();
}

std::vector<QueryResult> NeighborIndex::query_batch(const Matrix& queries,
                                                    const QueryOptions& options) const {
    const ProjectedBatch projected = project_queries(queries);
    const std::size_t m = queries.rows();
    const double c_r = plan_.c * plan_.radius;
    std::vector<QueryResult> results(m);
    std::vector<std::exception_ptr> errors(m);

#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(m); ++j) {
        try {
            CandidateScan scan =
                collect_candidates(projected, static_cast<std::size_t>(j),
                                   options.enum_budget, /*keep_per_block=*/false);
            FilterOutcome outcome = exact_filter(scan.merged, queries.row(j), dataset_,
                                                 c_r, options.return_all);
            QueryResult& r = results[j];
            r.hit = outcome.first;
            r.all_hits = std::move(outcome.all);
            r.stats.candidates_examined = outcome.examined;
            r.stats.false_positives = outcome.rejected;
            r.stats.blocks_touched = plan_.num_blocks;
            r.stats.cells_visited = scan.cells_visited;
        } catch (...) {
            errors[j] = std::current_exception();
        }
    }
    rethrow_first(errors);
    return results;
}

std::vector<std::vector<std::int64_t>> NeighborIndex::candidate_set(
    std::span<const double> q, std::size_t enum_budget) const {
    Matrix one(1, q.size());
    std::copy(q.begin(), q.end(), one.row_ptr(0));
    const ProjectedBatch projected = project_queries(one);
    return collect_candidates(projected, 0, enum_budget, /*keep_per_block=*/true)
        .per_block;
}

NeighborIndex NeighborIndex::restore(IndexVariant variant, ReductionPlan plan,
                                     Dataset dataset, std::vector<CellTable> tables) {
    validate_plan(plan, dataset.dim());
    if (tables.size() != plan.num_blocks) {
        throw std::invalid_argument("NeighborIndex: table count does not match plan");
    }
    NeighborIndex index(variant, plan,
                        random_orthonormal_basis(plan.padded_dim, plan.seed),
                        std::move(dataset));
    index.tables_ = std::move(tables);
    return index;
}

}  // namespace lvann
