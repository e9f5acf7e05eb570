#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

#include "lvann/io.hpp"

using namespace lvann;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("lvann_io_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_bytes(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::string fvecs_record(std::int32_t dim, const std::vector<float>& values) {
    std::string s(reinterpret_cast<const char*>(&dim), sizeof(dim));
    s.append(reinterpret_cast<const char*>(values.data()), values.size() * sizeof(float));
    return s;
}

}  // namespace

TEST_CASE("fvecs round trip") {
    TempDir tmp;
    Matrix points(3, 2);
    points(0, 0) = 1.5;   points(0, 1) = -2.0;
    points(1, 0) = 0.25;  points(1, 1) = 4.0;
    points(2, 0) = -8.0;  points(2, 1) = 0.0;
    const std::string path = tmp.file("points.fvecs");
    save_fvecs(path, points);
    const Matrix loaded = load_fvecs(path);
    CHECK(loaded == points);  // all values are exactly representable in f32
}

TEST_CASE("fvecs dimension mismatch names the byte offset") {
    TempDir tmp;
    const std::string path = tmp.file("bad.fvecs");
    write_bytes(path, fvecs_record(2, {1.f, 2.f}) + fvecs_record(3, {1.f, 2.f, 3.f}));
    try {
        load_fvecs(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        // the second record header starts after 4 + 8 bytes
        CHECK(e.byte_offset() == 12);
        CHECK(std::string(e.what()).find("does not match") != std::string::npos);
    }
}

TEST_CASE("fvecs truncation and garbage") {
    TempDir tmp;
    const std::string path = tmp.file("trunc.fvecs");
    std::string bytes = fvecs_record(3, {1.f, 2.f, 3.f});
    bytes.resize(bytes.size() - 2);
    write_bytes(path, bytes);
    CHECK_THROWS_AS(load_fvecs(path), ParseError);

    const std::string neg = tmp.file("neg.fvecs");
    write_bytes(neg, fvecs_record(-1, {}));
    CHECK_THROWS_AS(load_fvecs(neg), ParseError);

    const std::string empty = tmp.file("empty.fvecs");
    write_bytes(empty, "");
    CHECK_THROWS_AS(load_fvecs(empty), ParseError);
}

TEST_CASE("csv basic parsing") {
    TempDir tmp;
    const std::string path = tmp.file("points.csv");
    write_bytes(path, "1.0,2.0\n-0.5, 3.25\n\n0.125,8\n");
    const LoadedPoints loaded = load_csv(path, /*id_column=*/false);
    CHECK(loaded.ids.empty());
    REQUIRE(loaded.points.rows() == 3);
    REQUIRE(loaded.points.cols() == 2);
    CHECK(loaded.points(1, 0) == -0.5);
    CHECK(loaded.points(1, 1) == 3.25);
    CHECK(loaded.points(2, 1) == 8.0);
}

TEST_CASE("csv id column") {
    TempDir tmp;
    const std::string path = tmp.file("ids.csv");
    write_bytes(path, "42,1.0,2.0\n-7,3.0,4.0\n");
    const LoadedPoints loaded = load_csv(path, /*id_column=*/true);
    REQUIRE(loaded.ids.size() == 2);
    CHECK(loaded.ids[0] == 42);
    CHECK(loaded.ids[1] == -7);
    CHECK(loaded.points.cols() == 2);
}

TEST_CASE("csv errors name the line") {
    TempDir tmp;
    const std::string ragged = tmp.file("ragged.csv");
    write_bytes(ragged, "1.0,2.0\n3.0\n");
    try {
        load_csv(ragged, false);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }

    const std::string junk = tmp.file("junk.csv");
    write_bytes(junk, "1.0,fish\n");
    CHECK_THROWS_AS(load_csv(junk, false), ParseError);

    const std::string nan_file = tmp.file("nan.csv");
    write_bytes(nan_file, "1.0,nan\n");
    CHECK_THROWS_AS(load_csv(nan_file, false), ParseError);

    const std::string empty = tmp.file("none.csv");
    write_bytes(empty, "\n\n");
    CHECK_THROWS_AS(load_csv(empty, false), ParseError);
}

TEST_CASE("load_points dispatch") {
    TempDir tmp;
    const std::string path = tmp.file("p.csv");
    write_bytes(path, "1,2\n");
    CHECK(load_points(path, "csv", false).points.rows() == 1);
    CHECK_THROWS_AS(load_points(path, "parquet", false), std::invalid_argument);
}
