#include "lvann/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace lvann {

std::vector<ScanHit> linear_scan(const Dataset& dataset, std::span<const double> q,
                                 double radius) {
    if (q.size() != dataset.dim()) {
        throw std::invalid_argument("linear_scan: query dimension mismatch");
    }
    std::vector<std::pair<std::int64_t, double>> found;
    for (std::size_t r = 0; r < dataset.size(); ++r) {
        const double d = euclidean_distance(dataset.point(r), q);
        if (d <= radius) {
            found.emplace_back(dataset.id(r), d);
        }
    }
    std::sort(found.begin(), found.end());
    std::vector<ScanHit> hits;
    hits.reserve(found.size());
    for (const auto& [id, d] : found) {
        hits.push_back(ScanHit{id, d});
    }
    return hits;
}

namespace {

constexpr int kMaxRetries = 10'000;

void unit_direction(std::mt19937_64& rng, std::normal_distribution<double>& gauss,
                    std::span<double> out) {
    double norm_sq;
    do {
        norm_sq = 0.0;
        for (double& v : out) {
            v = gauss(rng);
            norm_sq += v * v;
        }
    } while (!(norm_sq > 0.0));
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (double& v : out) {
        v *= inv;
    }
}

void point_in_ball(std::mt19937_64& rng, std::normal_distribution<double>& gauss,
                   std::uniform_real_distribution<double>& unif, double ball_radius,
                   std::span<double> out) {
    unit_direction(rng, gauss, out);
    const double r =
        ball_radius * std::pow(unif(rng), 1.0 / static_cast<double>(out.size()));
    for (double& v : out) {
        v *= r;
    }
}

double min_distance_to_queries(std::span<const double> p, const Matrix& queries,
                               std::size_t skip = static_cast<std::size_t>(-1)) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < queries.rows(); ++i) {
        if (i == skip) continue;
        best = std::min(best, euclidean_distance(p, queries.row(i)));
    }
    return best;
}

}  // namespace

PlantedInstance plant_instance(std::size_t n, std::size_t d, std::size_t num_queries,
                               std::size_t num_planted, double radius, double c,
                               std::uint64_t seed) {
    if (n == 0 || d == 0 || num_queries == 0) {
        throw std::invalid_argument("plant_instance: n, d, num_queries must be >= 1");
    }
    if (num_planted > num_queries) {
        throw std::invalid_argument("plant_instance: num_planted must be <= num_queries");
    }
    if (num_planted > n) {
        throw std::invalid_argument("plant_instance: num_planted must be <= n");
    }
    if (!(radius > 0.0) || !(c > 1.0)) {
        throw std::invalid_argument("plant_instance: need radius > 0 and c > 1");
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double far = c * radius;
    const double span = 5.0 * far;  // keeps rejection rates negligible for d >= 8

    Matrix queries(num_queries, d);
    for (std::size_t i = 0; i < num_queries; ++i) {
        point_in_ball(rng, gauss, unif, span, queries.row(i));
    }

    const std::size_t num_background = n - num_planted;
    Matrix points(n, d);
    for (std::size_t i = 0; i < num_background; ++i) {
        int attempts = 0;
        do {
            if (++attempts > kMaxRetries) {
                throw std::runtime_error(
                    "plant_instance: background rejection sampling exceeded retry budget");
            }
            point_in_ball(rng, gauss, unif, span, points.row(i));
        } while (!(min_distance_to_queries(points.row(i), queries) > far));
    }

    std::vector<PlantedInstance::Certificate> certificates;
    std::vector<double> direction(d);
    for (std::size_t i = 0; i < num_planted; ++i) {
        const std::size_t row = num_background + i;
        int attempts = 0;
        double dist;
        do {
            if (++attempts > kMaxRetries) {
                throw std::runtime_error(
                    "plant_instance: planted rejection sampling exceeded retry budget");
            }
            unit_direction(rng, gauss, {direction.data(), d});
            const double r = radius * (1.0 - unif(rng));  // uniform in (0, radius]
            for (std::size_t t = 0; t < d; ++t) {
                points(row, t) = queries(i, t) + r * direction[t];
            }
            dist = euclidean_distance(points.row(row), queries.row(i));
        } while (!(dist > 0.0 && dist <= radius &&
                   min_distance_to_queries(points.row(row), queries, i) > far));
        certificates.push_back(
            PlantedInstance::Certificate{i, static_cast<std::int64_t>(row), dist});
    }

    return PlantedInstance{Dataset::with_default_ids(std::move(points)), std::move(queries),
                           std::move(certificates)};
}

}  // namespace lvann
