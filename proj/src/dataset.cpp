#include "lvann/dataset.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lvann {

Dataset::Dataset(Matrix points, std::vector<std::int64_t> ids)
    : points_(std::move(points)), ids_(std::move(ids)) {
    if (points_.rows() == 0 || points_.cols() == 0) {
        throw std::invalid_argument("Dataset: need at least one point with dimension >= 1");
    }
    if (ids_.size() != points_.rows()) {
        throw std::invalid_argument("Dataset: id count does not match point count");
    }
    for (double v : points_.data()) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("Dataset: all coordinates must be finite");
        }
    }
    row_by_id_.reserve(ids_.size());
    for (std::size_t r = 0; r < ids_.size(); ++r) {
        if (!row_by_id_.emplace(ids_[r], r).second) {
            throw std::invalid_argument("Dataset: duplicate id " + std::to_string(ids_[r]));
        }
    }
}

Dataset Dataset::with_default_ids(Matrix points) {
    std::vector<std::int64_t> ids(points.rows());
    std::iota(ids.begin(), ids.end(), 0);
    return Dataset(std::move(points), std::move(ids));
}

std::size_t Dataset::row_of(std::int64_t id) const {
    auto it = row_by_id_.find(id);
    if (it == row_by_id_.end()) {
        throw std::invalid_argument("Dataset: unknown id " + std::to_string(id));
    }
    return it->second;
}

}  // namespace lvann
