#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "lvann/common.hpp"

namespace lvann {

/// n points in d-dimensional Euclidean space with stable, unique integer
/// ids. Immutable after construction; validation happens once, here, so
/// the rest of the library can assume finite coordinates.
class Dataset {
public:
    Dataset(Matrix points, std::vector<std::int64_t> ids);

    /// Convenience: ids 0..n-1 in row order.
    static Dataset with_default_ids(Matrix points);

    std::size_t size() const { return points_.rows(); }
    std::size_t dim() const { return points_.cols(); }

    std::span<const double> point(std::size_t row) const { return points_.row(row); }
    std::int64_t id(std::size_t row) const { return ids_[row]; }
    std::size_t row_of(std::int64_t id) const;

    const Matrix& points() const { return points_; }
    const std::vector<std::int64_t>& ids() const { return ids_; }

    bool operator==(const Dataset& other) const {
        return points_ == other.points_ && ids_ == other.ids_;
    }

private:
    Matrix points_;
    std::vector<std::int64_t> ids_;
    std::unordered_map<std::int64_t, std::size_t> row_by_id_;
};

}  // namespace lvann
