#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "lvann/dataset.hpp"
#include "lvann/grid.hpp"
#include "lvann/linalg.hpp"
#include "lvann/planner.hpp"

namespace lvann {

/// The two interchangeable index layouts. Both are exact with respect to
/// the same candidate predicate (cell_gap_distance between the point's and
/// the query's cell is <= R per block), so they return identical candidate
/// sets; they only move the cell-cover enumeration between build and query.
enum class IndexVariant : std::uint8_t {
    kFastQuery = 0,  // pre-enumerate covers per input point; query = 1 lookup per block
    kFastPre = 1,    // store one cell per point; query enumerates the cover
};

const char* to_string(IndexVariant variant);
IndexVariant variant_from_string(const std::string& name);

/// Per-block store: cell -> bucket of point ids, buckets ascending.
using CellTable = std::unordered_map<CellId, std::vector<std::int64_t>, CellIdHash>;

struct BuildStats {
    std::uint64_t cells_inserted = 0;  // total (cell, id) insertions over all blocks
    double wall_time_s = 0.0;
};

struct QueryStats {
    std::size_t candidates_examined = 0;
    std::size_t false_positives = 0;  // candidates rejected by the exact check
    std::size_t blocks_touched = 0;
    std::size_t cells_visited = 0;

    bool operator==(const QueryStats&) const = default;
};

struct Hit {
    std::int64_t id;
    double distance;  // exact distance in the original space

    bool operator==(const Hit&) const = default;
};

/// If `hit` is present its distance is <= c*R. When the query ran in
/// report-all mode, `all_hits` holds every qualifying candidate (ascending
/// id); otherwise it stays empty and `hit` is the lowest qualifying id.
struct QueryResult {
    std::optional<Hit> hit;
    std::vector<Hit> all_hits;
    QueryStats stats;

    bool operator==(const QueryResult&) const = default;
};

struct BuildOptions {
    std::size_t enum_budget = kDefaultEnumBudget;
};

struct QueryOptions {
    bool return_all = false;
    std::size_t enum_budget = kDefaultEnumBudget;
};

/// Exact verification in the original space. Candidates must be
/// deduplicated and ascending; returns the first one within c_r of q and
/// counts the rejected ones (the false positives the reduction let
/// through). With return_all, keeps scanning and collects every match.
struct FilterOutcome {
    std::optional<Hit> first;
    std::vector<Hit> all;
    std::size_t examined = 0;
    std::size_t rejected = 0;
};

FilterOutcome exact_filter(std::span<const std::int64_t> candidate_ids,
                           std::span<const double> q, const Dataset& dataset, double c_r,
                           bool return_all = false);

/// A built near-neighbor index: plan + regenerable basis + per-block cell
/// tables + the original points (kept for exact verification). Immutable
/// after construction; concurrent queries are safe.
class NeighborIndex {
public:
    static NeighborIndex build(const Dataset& dataset, const ReductionPlan& plan,
                               IndexVariant variant, const BuildOptions& options = {});

    /// Answers one query. Guarantee: if any input point lies within R of q,
    /// the result is a hit (with distance <= c*R); a returned hit always
    /// satisfies distance <= c*R. Randomness never affects this, only cost.
    QueryResult query(std::span<const double> q, const QueryOptions& options = {}) const;

    /// Projects all queries with one batch product, then answers each one.
    /// Elementwise identical to calling query() in a loop.
    std::vector<QueryResult> query_batch(const Matrix& queries,
                                         const QueryOptions& options = {}) const;

    /// The ids the query path would examine, per block, without the exact
    /// check. Each set is sorted and deduplicated.
    std::vector<std::vector<std::int64_t>> candidate_set(
        std::span<const double> q, std::size_t enum_budget = kDefaultEnumBudget) const;

    IndexVariant variant() const { return variant_; }
    const ReductionPlan& plan() const { return plan_; }
    const OrthonormalBasis& basis() const { return basis_; }
    const std::vector<CellTable>& tables() const { return tables_; }
    const Dataset& dataset() const { return dataset_; }
    const BuildStats& build_stats() const { return stats_; }

    /// Reassembles an index from serialized parts (used by load_index).
    static NeighborIndex restore(IndexVariant variant, ReductionPlan plan, Dataset dataset,
                                 std::vector<CellTable> tables);

private:
    NeighborIndex(IndexVariant variant, ReductionPlan plan, OrthonormalBasis basis,
                  Dataset dataset);

    struct CandidateScan {
        std::vector<std::vector<std::int64_t>> per_block;
        std::vector<std::int64_t> merged;
        std::size_t cells_visited = 0;
    };
    CandidateScan collect_candidates(const ProjectedBatch& projected, std::size_t row,
                                     std::size_t enum_budget, bool keep_per_block) const;
    ProjectedBatch project_queries(const Matrix& queries) const;

    IndexVariant variant_;
    ReductionPlan plan_;
    OrthonormalBasis basis_;
    Dataset dataset_;
    std::vector<CellTable> tables_;
    BuildStats stats_;
};

/// Versioned binary container (magic "LVANN1", little-endian): plan, seed
/// and tables plus the dataset needed for exact checks. The basis is
/// regenerated from (padded_dim, seed) on load, not stored; checksums over
/// the dataset bytes and the regenerated basis guard against mismatched
/// exact-check data. `ingest_scale` records the radius normalization the
/// ingestion applied (coordinates were divided by it).
void save_index(const NeighborIndex& index, std::ostream& out, double ingest_scale = 1.0);
void save_index(const NeighborIndex& index, const std::string& path,
                double ingest_scale = 1.0);

struct LoadedIndex {
    NeighborIndex index;
    double ingest_scale;
};

LoadedIndex load_index(std::istream& in);
LoadedIndex load_index(const std::string& path);

}  // namespace lvann
