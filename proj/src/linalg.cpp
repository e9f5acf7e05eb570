#include "lvann/linalg.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "lvann/kernels.hpp"

namespace lvann {

OrthonormalBasis random_orthonormal_basis(std::size_t dim, std::uint64_t seed) {
    if (dim == 0) {
        throw std::invalid_argument("random_orthonormal_basis: dim must be >= 1");
    }
    Matrix m(dim, dim);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (double& v : m.data()) {
        v = gauss(rng);
    }

    // Modified Gram-Schmidt. The second sweep reorthogonalizes against the
    // finished rows, which keeps |Q Q^T - I| near machine epsilon even for
    // poorly conditioned draws.
    for (std::size_t i = 0; i < dim; ++i) {
        double* ri = m.row_ptr(i);
        for (int sweep = 0; sweep < 2; ++sweep) {
            for (std::size_t j = 0; j < i; ++j) {
                const double* rj = m.row_ptr(j);
                const double proj = dot(ri, rj, dim);
                for (std::size_t t = 0; t < dim; ++t) {
                    ri[t] -= proj * rj[t];
                }
            }
        }
        const double norm = std::sqrt(dot(ri, ri, dim));
        if (!(norm > 0.0)) {
            throw std::runtime_error("random_orthonormal_basis: degenerate draw");
        }
        for (std::size_t t = 0; t < dim; ++t) {
            ri[t] /= norm;
        }
        if (ri[i] < 0.0) {
            for (std::size_t t = 0; t < dim; ++t) {
                ri[t] = -ri[t];
            }
        }
    }
    return OrthonormalBasis{dim, seed, std::move(m)};
}

std::vector<BlockMapping> block_mappings(const OrthonormalBasis& basis, std::size_t k) {
    if (k == 0 || k > basis.dim || basis.dim % k != 0) {
        throw std::invalid_argument("block_mappings: k must divide the basis dimension");
    }
    const std::size_t num_blocks = basis.dim / k;
    const double scale = std::sqrt(static_cast<double>(basis.dim) / static_cast<double>(k));
    std::vector<BlockMapping> blocks;
    blocks.reserve(num_blocks);
    for (std::size_t b = 0; b < num_blocks; ++b) {
        BlockMapping mapping;
        mapping.block_index = b + 1;
        mapping.k = k;
        mapping.scale = scale;
        mapping.rows = Matrix(k, basis.dim);
        for (std::size_t r = 0; r < k; ++r) {
            const double* src = basis.rows.row_ptr(b * k + r);
            double* dst = mapping.rows.row_ptr(r);
            for (std::size_t t = 0; t < basis.dim; ++t) {
                dst[t] = scale * src[t];
            }
        }
        blocks.push_back(std::move(mapping));
    }
    return blocks;
}

std::vector<double> project_point(const BlockMapping& mapping, std::span<const double> x) {
    if (x.size() != mapping.rows.cols()) {
        throw std::invalid_argument("project_point: vector length " + std::to_string(x.size()) +
                                    " does not match mapping dimension " +
                                    std::to_string(mapping.rows.cols()));
    }
    std::vector<double> out(mapping.k);
    for (std::size_t r = 0; r < mapping.k; ++r) {
        out[r] = dot(mapping.rows.row_ptr(r), x.data(), x.size());
    }
    return out;
}

ProjectedBatch project_batch(const Matrix& points, const OrthonormalBasis& basis,
                             std::size_t k) {
    if (points.rows() == 0) {
        throw std::invalid_argument("project_batch: need at least one row");
    }
    if (points.cols() != basis.dim) {
        throw std::invalid_argument("project_batch: point dimension " +
                                    std::to_string(points.cols()) +
                                    " does not match basis dimension " +
                                    std::to_string(basis.dim));
    }
    if (k == 0 || basis.dim % k != 0) {
        throw std::invalid_argument("project_batch: k must divide the basis dimension");
    }
    const double scale = std::sqrt(static_cast<double>(basis.dim) / static_cast<double>(k));
    Matrix product;
    multiply_abt(points, basis.rows, product, scale);

    ProjectedBatch batch;
    batch.count = points.rows();
    batch.num_blocks = basis.dim / k;
    batch.block_dim = k;
    batch.data = std::move(product.data());
    return batch;
}

Matrix pad_columns(const Matrix& points, std::size_t cols) {
    if (cols < points.cols()) {
        throw std::invalid_argument("pad_columns: target width smaller than input");
    }
    if (cols == points.cols()) {
        return points;
    }
    Matrix out(points.rows(), cols, 0.0);
    for (std::size_t r = 0; r < points.rows(); ++r) {
        const double* src = points.row_ptr(r);
        double* dst = out.row_ptr(r);
        for (std::size_t c = 0; c < points.cols(); ++c) {
            dst[c] = src[c];
        }
    }
    return out;
}

}  // namespace lvann
