#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lvann {

/// Cap on the number of cells a single lattice enumeration may emit.
/// Exceeding it raises BudgetExceeded instead of truncating the result:
/// a truncated cell cover could silently drop a true neighbor.
inline constexpr std::size_t kDefaultEnumBudget = 10'000'000;

/// Dense row-major matrix of doubles. All numeric state in the library
/// is 64-bit; inputs in narrower formats are widened at ingestion.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, value) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    double* row_ptr(std::size_t r) { return data_.data() + r * cols_; }
    const double* row_ptr(std::size_t r) const { return data_.data() + r * cols_; }

    std::span<double> row(std::size_t r) { return {row_ptr(r), cols_}; }
    std::span<const double> row(std::size_t r) const { return {row_ptr(r), cols_}; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Raised when a cell enumeration would emit more cells than its budget
/// allows. Carries the offending geometry so callers can report it.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(std::size_t dims, double radius, double side, std::size_t budget)
        : std::runtime_error("cell enumeration budget exceeded (k=" + std::to_string(dims) +
                             ", radius=" + std::to_string(radius) +
                             ", side=" + std::to_string(side) +
                             ", budget=" + std::to_string(budget) + " cells)"),
          dims_(dims), radius_(radius), side_(side), budget_(budget) {}

    std::size_t dims() const noexcept { return dims_; }
    double radius() const noexcept { return radius_; }
    double side() const noexcept { return side_; }
    std::size_t budget() const noexcept { return budget_; }

private:
    std::size_t dims_;
    double radius_;
    double side_;
    std::size_t budget_;
};

/// Malformed input file (fvecs / csv / index container). Records the byte
/// offset of the violation when one is known.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& message)
        : std::runtime_error(message), offset_(-1) {}
    ParseError(const std::string& message, std::int64_t byte_offset)
        : std::runtime_error(message + " (at byte " + std::to_string(byte_offset) + ")"),
          offset_(byte_offset) {}

    std::int64_t byte_offset() const noexcept { return offset_; }

private:
    std::int64_t offset_;
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

/// Exact Euclidean distance. The index's candidate filter, the linear-scan
/// oracle and every test use this one function, so "within c*R" means the
/// same arithmetic everywhere.
inline double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(squared_distance(a, b));
}

/// 64-bit multiply-xor mixer (splitmix64 finalizer).
inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

/// FNV-1a over a byte range; used for the container checksums.
inline std::uint64_t fnv1a64(const void* data, std::size_t len,
                             std::uint64_t seed = 0xcbf29ce484222325ULL) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace lvann
