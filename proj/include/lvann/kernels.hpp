#pragma once

#include "lvann/common.hpp"

namespace lvann {

/// Dot product over contiguous doubles. Shared by every projection path so
/// batch and per-point results round identically.
double dot(const double* x, const double* y, std::size_t n);

/// out = scale * (a * b^T), all row-major. Parallel over rows of `a`; each
/// output element is a single dot product, so the result is bit-identical
/// for any thread count.
void multiply_abt(const Matrix& a, const Matrix& b, Matrix& out, double scale = 1.0);

/// Serial reference for multiply_abt. Kept for tests and the kernel
/// benchmark; must produce bitwise-equal output.
void multiply_abt_serial(const Matrix& a, const Matrix& b, Matrix& out, double scale = 1.0);

}  // namespace lvann
