#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lvann/common.hpp"

namespace lvann {

/// Points plus optional explicit ids (empty when the format carries none;
/// callers then assign row numbers).
struct LoadedPoints {
    Matrix points;
    std::vector<std::int64_t> ids;
};

/// fvecs: per record a little-endian int32 dimension followed by that many
/// little-endian float32 values. Every record must share one dimension;
/// violations raise ParseError naming the byte offset.
Matrix load_fvecs(const std::string& path);

/// Writes fvecs (values narrowed to float32).
void save_fvecs(const std::string& path, const Matrix& points);

/// csv: one point per line, comma-separated decimal floats, optionally a
/// leading integer id column. Errors name the line number.
LoadedPoints load_csv(const std::string& path, bool id_column);

/// Dispatch on a format name ("fvecs" or "csv").
LoadedPoints load_points(const std::string& path, const std::string& format,
                         bool id_column);

}  // namespace lvann
