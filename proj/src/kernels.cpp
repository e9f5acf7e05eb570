#include "lvann/kernels.hpp"

#include <stdexcept>

namespace lvann {

double dot(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        acc += x[t] * y[t];
    }
    return acc;
}

static void check_abt_shapes(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) {
        throw std::invalid_argument("multiply_abt: inner dimensions differ (" +
                                    std::to_string(a.cols()) + " vs " +
                                    std::to_string(b.cols()) + ")");
    }
}

void multiply_abt(const Matrix& a, const Matrix& b, Matrix& out, double scale) {
    check_abt_shapes(a, b);
    out = Matrix(a.rows(), b.rows());
    const std::int64_t m = static_cast<std::int64_t>(a.rows());
    const std::size_t n = b.rows();
    const std::size_t inner = a.cols();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < m; ++i) {
        const double* ai = a.row_ptr(static_cast<std::size_t>(i));
        double* oi = out.row_ptr(static_cast<std::size_t>(i));
        for (std::size_t j = 0; j < n; ++j) {
            oi[j] = scale * dot(ai, b.row_ptr(j), inner);
        }
    }
}

void multiply_abt_serial(const Matrix& a, const Matrix& b, Matrix& out, double scale) {
    check_abt_shapes(a, b);
    out = Matrix(a.rows(), b.rows());
    const std::size_t n = b.rows();
    const std::size_t inner = a.cols();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* ai = a.row_ptr(i);
        double* oi = out.row_ptr(i);
        for (std::size_t j = 0; j < n; ++j) {
            oi[j] = scale * dot(ai, b.row_ptr(j), inner);
        }
    }
}

}  // namespace lvann
