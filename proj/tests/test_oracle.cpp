#include <doctest.h>

#include <cmath>
#include <limits>

#include "lvann/oracle.hpp"

using namespace lvann;

namespace {

Dataset tiny_dataset() {
    Matrix points(4, 2);
    points(0, 0) = 0.0;  points(0, 1) = 0.0;
    points(1, 0) = 1.0;  points(1, 1) = 0.0;
    points(2, 0) = 0.0;  points(2, 1) = 2.0;
    points(3, 0) = 3.0;  points(3, 1) = 3.0;
    return Dataset::with_default_ids(std::move(points));
}

}  // namespace

TEST_CASE("linear_scan basics") {
    const Dataset ds = tiny_dataset();

    SUBCASE("radius zero finds only exact duplicates") {
        const std::vector<double> q{0.0, 2.0};
        const auto hits = linear_scan(ds, q, 0.0);
        REQUIRE(hits.size() == 1);
        CHECK(hits[0].id == 2);
        CHECK(hits[0].distance == 0.0);
    }

    SUBCASE("infinite radius returns everything, ascending id") {
        const std::vector<double> q{0.5, 0.5};
        const auto hits = linear_scan(ds, q, std::numeric_limits<double>::infinity());
        REQUIRE(hits.size() == 4);
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(hits[i].id == static_cast<std::int64_t>(i));
        }
    }

    SUBCASE("closed comparison includes the boundary") {
        const std::vector<double> q{2.0, 0.0};
        const auto hits = linear_scan(ds, q, 1.0);
        REQUIRE(hits.size() == 1);
        CHECK(hits[0].id == 1);
        CHECK(hits[0].distance == 1.0);
    }

    SUBCASE("dimension mismatch") {
        const std::vector<double> q{0.0};
        CHECK_THROWS_AS(linear_scan(ds, q, 1.0), std::invalid_argument);
    }
}

TEST_CASE("plant_instance") {
    SUBCASE("certificates are oracle-verified and within the radius") {
        const PlantedInstance inst = plant_instance(200, 16, 50, 30, 1.0, 2.0, 7);
        CHECK(inst.dataset.size() == 200);
        CHECK(inst.queries.rows() == 50);
        REQUIRE(inst.certificates.size() == 30);
        for (const auto& cert : inst.certificates) {
            CHECK(cert.distance > 0.0);
            CHECK(cert.distance <= 1.0);
            const auto hits =
                linear_scan(inst.dataset, inst.queries.row(cert.query_index), 1.0);
            REQUIRE(hits.size() >= 1);
            bool found = false;
            for (const ScanHit& h : hits) {
                if (h.id == cert.planted_id) {
                    found = true;
                    CHECK(h.distance == cert.distance);
                }
            }
            CHECK(found);
        }
    }

    SUBCASE("uncertified queries have nothing within c*R") {
        const PlantedInstance inst = plant_instance(150, 16, 40, 25, 1.0, 2.0, 11);
        for (std::size_t q = 25; q < 40; ++q) {
            CHECK(linear_scan(inst.dataset, inst.queries.row(q), 2.0).empty());
        }
    }

    SUBCASE("numPlanted = 0 means every query misses") {
        const PlantedInstance inst = plant_instance(100, 16, 20, 0, 1.0, 3.0, 3);
        CHECK(inst.certificates.empty());
        for (std::size_t q = 0; q < 20; ++q) {
            CHECK(linear_scan(inst.dataset, inst.queries.row(q), 3.0).empty());
        }
    }

    SUBCASE("deterministic under a fixed seed") {
        const PlantedInstance a = plant_instance(60, 8, 10, 5, 1.0, 2.0, 99);
        const PlantedInstance b = plant_instance(60, 8, 10, 5, 1.0, 2.0, 99);
        CHECK(a.dataset == b.dataset);
        CHECK(a.queries == b.queries);
        REQUIRE(a.certificates.size() == b.certificates.size());
        for (std::size_t i = 0; i < a.certificates.size(); ++i) {
            CHECK(a.certificates[i].planted_id == b.certificates[i].planted_id);
            CHECK(a.certificates[i].distance == b.certificates[i].distance);
        }
    }

    SUBCASE("invalid arguments") {
        CHECK_THROWS_AS(plant_instance(10, 8, 5, 6, 1.0, 2.0, 1), std::invalid_argument);
        CHECK_THROWS_AS(plant_instance(10, 8, 5, 3, 0.0, 2.0, 1), std::invalid_argument);
        CHECK_THROWS_AS(plant_instance(10, 8, 5, 3, 1.0, 1.0, 1), std::invalid_argument);
        CHECK_THROWS_AS(plant_instance(0, 8, 5, 3, 1.0, 2.0, 1), std::invalid_argument);
    }
}

TEST_CASE("dataset validation") {
    CHECK_THROWS_AS(Dataset(Matrix(0, 3), {}), std::invalid_argument);

    Matrix bad(1, 2);
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(Dataset::with_default_ids(std::move(bad)), std::invalid_argument);

    Matrix fine(2, 1);
    fine(0, 0) = 1.0;
    fine(1, 0) = 2.0;
    CHECK_THROWS_AS(Dataset(std::move(fine), {5, 5}), std::invalid_argument);

    Matrix fine2(2, 1);
    fine2(0, 0) = 1.0;
    fine2(1, 0) = 2.0;
    const Dataset ds(std::move(fine2), {10, -3});
    CHECK(ds.row_of(10) == 0);
    CHECK(ds.row_of(-3) == 1);
    CHECK_THROWS_AS(ds.row_of(4), std::invalid_argument);
}
