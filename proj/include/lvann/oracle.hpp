#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lvann/common.hpp"
#include "lvann/dataset.hpp"

namespace lvann {

struct ScanHit {
    std::int64_t id;
    double distance;

    bool operator==(const ScanHit&) const = default;
};

/// Brute-force ground truth: every point within `radius` of q (closed
/// comparison), exact distances, ascending id. Deliberately naive; index
/// completeness and soundness are always judged against this.
std::vector<ScanHit> linear_scan(const Dataset& dataset, std::span<const double> q,
                                 double radius);

/// A randomized test instance with known answers. Background points are
/// rejection-sampled to lie farther than c*radius from every query, and
/// each planted neighbor sits within (0, radius] of exactly one query while
/// staying farther than c*radius from all the others. Queries without a
/// certificate therefore have no point within c*radius and must miss.
struct PlantedInstance {
    struct Certificate {
        std::size_t query_index;
        std::int64_t planted_id;
        double distance;  // exact, <= radius
    };

    Dataset dataset;
    Matrix queries;
    std::vector<Certificate> certificates;
};

PlantedInstance plant_instance(std::size_t n, std::size_t d, std::size_t num_queries,
                               std::size_t num_planted, double radius, double c,
                               std::uint64_t seed);

}  // namespace lvann
