#include "lvann/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace lvann {

namespace {

// Largest coordinate magnitude we quantize, in cell units.
constexpr double kMaxCellCoord = 4611686018427387904.0;  // 2^62

void check_side(double side) {
    if (!(side > 0.0)) {
        throw std::invalid_argument("grid: side must be positive");
    }
}

// Distance from center_j to the closed interval [m*side, (m+1)*side].
double axis_residual(double x, std::int64_t m, double side) {
    const double lo = static_cast<double>(m) * side;
    const double hi = static_cast<double>(m + 1) * side;
    if (x < lo) return lo - x;
    if (x > hi) return x - hi;
    return 0.0;
}

// Gap between the closed boxes at offsets a and b along one axis.
double axis_gap(std::int64_t a, std::int64_t b, double side) {
    const std::int64_t delta = a > b ? a - b : b - a;
    if (delta <= 1) return 0.0;
    return static_cast<double>(delta - 1) * side;
}

}  // namespace

CellId quantize(std::span<const double> x, double side) {
    check_side(side);
    CellId cell;
    cell.coords.resize(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double q = x[j] / side;
        if (!(std::abs(q) < kMaxCellCoord)) {
            throw std::invalid_argument("quantize: coordinate " + std::to_string(j) +
                                        " outside the quantizable range (or not finite)");
        }
        cell.coords[j] = static_cast<std::int64_t>(std::floor(q));
    }
    return cell;
}

double box_ball_distance_sq(const CellId& cell, std::span<const double> center, double side) {
    check_side(side);
    if (cell.coords.size() != center.size()) {
        throw std::invalid_argument("box_ball_distance: dimension mismatch");
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < center.size(); ++j) {
        const double r = axis_residual(center[j], cell.coords[j], side);
        acc += r * r;
    }
    return acc;
}

double box_ball_distance(const CellId& cell, std::span<const double> center, double side) {
    return std::sqrt(box_ball_distance_sq(cell, center, side));
}

double cell_gap_distance(const CellId& a, const CellId& b, double side) {
    check_side(side);
    if (a.coords.size() != b.coords.size()) {
        throw std::invalid_argument("cell_gap_distance: dimension mismatch");
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < a.coords.size(); ++j) {
        const double g = axis_gap(a.coords[j], b.coords[j], side);
        acc += g * g;
    }
    return std::sqrt(acc);
}

namespace {

struct BallEnum {
    std::span<const double> center;
    double side;
    double radius_sq;
    std::size_t budget;
    const CellVisitor* visit;
    std::vector<std::int64_t> cur;
    std::size_t emitted = 0;

    // Every partial assignment extends to at least one full cell (the one
    // holding the center in the remaining coordinates has zero residual),
    // so the recursion never explores a branch without output.
    void walk(std::size_t depth, double acc, double radius) {
        if (depth == center.size()) {
            if (emitted >= budget) {
                throw BudgetExceeded(center.size(), radius, side, budget);
            }
            ++emitted;
            (*visit)(cur);
            return;
        }
        const double rem = std::sqrt(std::max(0.0, radius_sq - acc));
        const std::int64_t lo =
            static_cast<std::int64_t>(std::floor((center[depth] - rem) / side)) - 1;
        const std::int64_t hi =
            static_cast<std::int64_t>(std::floor((center[depth] + rem) / side)) + 1;
        for (std::int64_t m = lo; m <= hi; ++m) {
            const double r = axis_residual(center[depth], m, side);
            const double next = acc + r * r;
            if (next <= radius_sq) {
                cur[depth] = m;
                walk(depth + 1, next, radius);
            }
        }
    }
};

struct NeighborhoodEnum {
    const CellId* base;
    double side;
    double radius_sq;
    std::size_t budget;
    const CellVisitor* visit;
    std::vector<std::int64_t> cur;
    std::size_t emitted = 0;

    void walk(std::size_t depth, double acc, double radius) {
        const std::size_t k = base->coords.size();
        if (depth == k) {
            if (emitted >= budget) {
                throw BudgetExceeded(k, radius, side, budget);
            }
            ++emitted;
            (*visit)(cur);
            return;
        }
        const double rem = std::sqrt(std::max(0.0, radius_sq - acc));
        const std::int64_t reach = static_cast<std::int64_t>(std::floor(rem / side)) + 1;
        for (std::int64_t d = -reach; d <= reach; ++d) {
            const std::int64_t m = base->coords[depth] + d;
            const double g = axis_gap(m, base->coords[depth], side);
            const double next = acc + g * g;
            if (next <= radius_sq) {
                cur[depth] = m;
                walk(depth + 1, next, radius);
            }
        }
    }
};

}  // namespace

void for_each_cell_in_ball(std::span<const double> center, double radius, double side,
                           std::size_t budget, const CellVisitor& visit) {
    check_side(side);
    if (!(radius >= 0.0)) {
        throw std::invalid_argument("cells_intersecting_ball: radius must be >= 0");
    }
    for (std::size_t j = 0; j < center.size(); ++j) {
        if (!((std::abs(center[j]) + radius) / side + 2.0 < kMaxCellCoord)) {
            throw std::invalid_argument(
                "cells_intersecting_ball: enumeration range leaves the quantizable "
                "coordinate space");
        }
    }
    BallEnum e{center, side, radius * radius, budget, &visit, {}, 0};
    e.cur.resize(center.size());
    e.walk(0, 0.0, radius);
}

void for_each_cell_near_cell(const CellId& base, double radius, double side,
                             std::size_t budget, const CellVisitor& visit) {
    check_side(side);
    if (!(radius >= 0.0)) {
        throw std::invalid_argument("cell_neighborhood: radius must be >= 0");
    }
    for (std::int64_t c : base.coords) {
        if (!(std::abs(static_cast<double>(c)) + radius / side + 2.0 < kMaxCellCoord)) {
            throw std::invalid_argument(
                "cell_neighborhood: enumeration range leaves the quantizable "
                "coordinate space");
        }
    }
    NeighborhoodEnum e{&base, side, radius * radius, budget, &visit, {}, 0};
    e.cur.resize(base.coords.size());
    e.walk(0, 0.0, radius);
}

std::vector<CellId> cells_intersecting_ball(std::span<const double> center, double radius,
                                            double side, std::size_t budget) {
    std::vector<CellId> out;
    for_each_cell_in_ball(center, radius, side, budget,
                          [&](std::span<const std::int64_t> coords) {
                              out.push_back(CellId{{coords.begin(), coords.end()}});
                          });
    return out;
}

std::vector<CellId> cell_neighborhood(const CellId& base, double radius, double side,
                                      std::size_t budget) {
    std::vector<CellId> out;
    for_each_cell_near_cell(base, radius, side, budget,
                            [&](std::span<const std::int64_t> coords) {
                                out.push_back(CellId{{coords.begin(), coords.end()}});
                            });
    return out;
}

}  // namespace lvann
