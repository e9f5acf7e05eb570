#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lvann/common.hpp"

namespace lvann {

/// Integer lattice coordinates of one grid cell. Cell m covers the
/// half-open box [m*side, (m+1)*side) per coordinate for quantization;
/// intersection tests treat the box as closed (over-inclusion is safe).
struct CellId {
    std::vector<std::int64_t> coords;

    bool operator==(const CellId&) const = default;
    auto operator<=>(const CellId&) const = default;  // lexicographic
};

/// Bucketing hash: a 64-bit multiply-xor mix folded over the coordinate
/// words (interpreted little-endian, which is the native layout here).
/// Used only to pick a bucket; lookups always compare the full key.
struct CellIdHash {
    std::size_t operator()(const CellId& cell) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (std::int64_t w : cell.coords) {
            h = mix64(h ^ static_cast<std::uint64_t>(w));
        }
        return static_cast<std::size_t>(h);
    }
};

/// Cell containing x: coords_j = floor(x_j / side). Coordinates whose
/// magnitude would exceed 2^62 cells are rejected.
CellId quantize(std::span<const double> x, double side);

/// Squared Euclidean distance from `center` to the closed box of `cell`.
double box_ball_distance_sq(const CellId& cell, std::span<const double> center, double side);

/// Euclidean distance from `center` to the closed box of `cell`.
double box_ball_distance(const CellId& cell, std::span<const double> center, double side);

/// Box-to-box distance between two cells of the same grid: per coordinate
/// the gap is max(0, |a_j - b_j| - 1) * side. Depends only on the integer
/// offsets, so it is exactly symmetric in its arguments.
double cell_gap_distance(const CellId& a, const CellId& b, double side);

using CellVisitor = std::function<void(std::span<const std::int64_t>)>;

/// Streams every cell whose closed box intersects the closed ball
/// (box_ball_distance <= radius), in lexicographic order, by depth-first
/// recursion over coordinates with pruning on the accumulated squared
/// residual. Throws BudgetExceeded before emitting cell budget+1.
void for_each_cell_in_ball(std::span<const double> center, double radius, double side,
                           std::size_t budget, const CellVisitor& visit);

/// Streams every cell whose closed box lies within `radius` of the closed
/// box of `base` (cell_gap_distance <= radius), in lexicographic order.
/// The predicate is symmetric: b is visited from a iff a is visited from b.
void for_each_cell_near_cell(const CellId& base, double radius, double side,
                             std::size_t budget, const CellVisitor& visit);

/// Materialized form of for_each_cell_in_ball.
std::vector<CellId> cells_intersecting_ball(std::span<const double> center, double radius,
                                            double side,
                                            std::size_t budget = kDefaultEnumBudget);

/// Materialized form of for_each_cell_near_cell.
std::vector<CellId> cell_neighborhood(const CellId& base, double radius, double side,
                                      std::size_t budget = kDefaultEnumBudget);

}  // namespace lvann
