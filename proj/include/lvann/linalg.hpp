#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lvann/common.hpp"

namespace lvann {

/// A random orthonormal basis of R^dim, reproducible from (dim, seed).
/// Rows are the basis vectors; rows * rows^T = I to ~1e-15.
struct OrthonormalBasis {
    std::size_t dim = 0;
    std::uint64_t seed = 0;
    Matrix rows;
};

/// One block of k consecutive basis rows, scaled by sqrt(dim / k).
/// Applying it to a vector projects R^dim down to R^k.
struct BlockMapping {
    std::size_t block_index = 0;  // 1-based position of the block
    std::size_t k = 0;
    double scale = 0.0;           // sqrt(dim / k)
    Matrix rows;                  // k x dim, already scaled
};

/// Batch projection result: one reduced k-vector per (row, block).
struct ProjectedBatch {
    std::size_t count = 0;
    std::size_t num_blocks = 0;
    std::size_t block_dim = 0;
    std::vector<double> data;  // count x (num_blocks * block_dim), row-major

    std::span<const double> block(std::size_t row, std::size_t block) const {
        return {data.data() + (row * num_blocks + block) * block_dim, block_dim};
    }
};

/// Seeded Gaussian matrix orthonormalized by modified Gram-Schmidt with a
/// reorthogonalization sweep. Sign convention: each row is flipped so its
/// diagonal entry is positive, which pins the output uniquely (dim=1 always
/// yields [[+1]]). Deterministic for a fixed (dim, seed).
OrthonormalBasis random_orthonormal_basis(std::size_t dim, std::uint64_t seed);

/// Splits the basis into dim/k blocks of k consecutive rows, each scaled by
/// sqrt(dim/k). Requires k to divide dim; callers pad beforehand.
std::vector<BlockMapping> block_mappings(const OrthonormalBasis& basis, std::size_t k);

/// Applies one block mapping to a single vector.
std::vector<double> project_point(const BlockMapping& mapping, std::span<const double> x);

/// Projects all rows through every block with one matrix product
/// (points * basis^T) followed by the uniform block scale.
ProjectedBatch project_batch(const Matrix& points, const OrthonormalBasis& basis,
                             std::size_t k);

/// Returns a copy of `points` widened to `cols` columns, new entries zero.
/// Zero padding appends coordinates that are 0 in every vector, so all norms
/// and distances are unchanged.
Matrix pad_columns(const Matrix& points, std::size_t cols);

}  // namespace lvann
