#include "lvann/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

static_assert(std::endian::native == std::endian::little,
              "fvecs loading assumes a little-endian host");

namespace lvann {

namespace {

std::vector<char> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
    return bytes;
}

}  // namespace

Matrix load_fvecs(const std::string& path) {
    const std::vector<char> bytes = read_file(path);
    if (bytes.empty()) {
        throw ParseError("fvecs file '" + path + "' is empty", 0);
    }

    std::size_t offset = 0;
    std::int32_t dim = 0;
    std::vector<float> values;
    std::size_t records = 0;
    while (offset < bytes.size()) {
        if (offset + sizeof(std::int32_t) > bytes.size()) {
            throw ParseError("fvecs record header truncated",
                             static_cast<std::int64_t>(offset));
        }
        std::int32_t record_dim;
        std::memcpy(&record_dim, bytes.data() + offset, sizeof(record_dim));
        if (record_dim <= 0) {
            throw ParseError("fvecs record declares non-positive dimension " +
                                 std::to_string(record_dim),
                             static_cast<std::int64_t>(offset));
        }
        if (records == 0) {
            dim = record_dim;
        } else if (record_dim != dim) {
            throw ParseError("fvecs record dimension " + std::to_string(record_dim) +
                                 " does not match " + std::to_string(dim),
                             static_cast<std::int64_t>(offset));
        }
        offset += sizeof(std::int32_t);
        const std::size_t payload = static_cast<std::size_t>(record_dim) * sizeof(float);
        if (offset + payload > bytes.size()) {
            throw ParseError("fvecs record payload truncated",
                             static_cast<std::int64_t>(offset));
        }
        const std::size_t begin = values.size();
        values.resize(begin + static_cast<std::size_t>(record_dim));
        std::memcpy(values.data() + begin, bytes.data() + offset, payload);
        for (std::size_t j = 0; j < static_cast<std::size_t>(record_dim); ++j) {
            if (!std::isfinite(values[begin + j])) {
                throw ParseError("fvecs value is not finite",
                                 static_cast<std::int64_t>(offset + j * sizeof(float)));
            }
        }
        offset += payload;
        ++records;
    }

    Matrix points(records, static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < values.size(); ++i) {
        points.data()[i] = static_cast<double>(values[i]);
    }
    return points;
}

void save_fvecs(const std::string& path, const Matrix& points) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("save_fvecs: cannot open '" + path + "' for writing");
    }
    const auto dim = static_cast<std::int32_t>(points.cols());
    std::vector<float> row(points.cols());
    for (std::size_t r = 0; r < points.rows(); ++r) {
        out.write(reinterpret_cast<const char*>(&dim), sizeof(dim));
        for (std::size_t c = 0; c < points.cols(); ++c) {
            row[c] = static_cast<float>(points(r, c));
        }
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size() * sizeof(float)));
    }
    if (!out) {
        throw std::runtime_error("save_fvecs: write failed");
    }
}

LoadedPoints load_csv(const std::string& path, bool id_column) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }

    LoadedPoints out;
    std::vector<double> values;
    std::size_t cols = 0;
    std::size_t rows = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::vector<std::string_view> fields;
        std::string_view rest(line);
        while (true) {
            const std::size_t comma = rest.find(',');
            fields.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }

        std::size_t first_value = 0;
        if (id_column) {
            if (fields.size() < 2) {
                throw ParseError("csv line " + std::to_string(line_no) +
                                 ": expected an id column plus coordinates");
            }
            std::int64_t id;
            const auto* b = fields[0].data();
            const auto* e = b + fields[0].size();
            auto res = std::from_chars(b, e, id);
            if (res.ec != std::errc{} || res.ptr != e) {
                throw ParseError("csv line " + std::to_string(line_no) +
                                 ": invalid id '" + std::string(fields[0]) + "'");
            }
            out.ids.push_back(id);
            first_value = 1;
        }

        const std::size_t point_cols = fields.size() - first_value;
        if (rows == 0) {
            cols = point_cols;
            if (cols == 0) {
                throw ParseError("csv line " + std::to_string(line_no) +
                                 ": no coordinates");
            }
        } else if (point_cols != cols) {
            throw ParseError("csv line " + std::to_string(line_no) + ": expected " +
                             std::to_string(cols) + " coordinates, found " +
                             std::to_string(point_cols));
        }
        for (std::size_t f = first_value; f < fields.size(); ++f) {
            std::string_view field = fields[f];
            while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) {
                field.remove_prefix(1);
            }
            while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) {
                field.remove_suffix(1);
            }
            double v;
            const auto* b = field.data();
            const auto* e = b + field.size();
            auto res = std::from_chars(b, e, v);
            if (res.ec != std::errc{} || res.ptr != e || !std::isfinite(v)) {
                throw ParseError("csv line " + std::to_string(line_no) +
                                 ": invalid value '" + std::string(field) + "'");
            }
            values.push_back(v);
        }
        ++rows;
    }
    if (rows == 0) {
        throw ParseError("csv file '" + path + "' holds no points");
    }

    out.points = Matrix(rows, cols);
    out.points.data() = std::move(values);
    return out;
}

LoadedPoints load_points(const std::string& path, const std::string& format,
                         bool id_column) {
    if (format == "fvecs") {
        return LoadedPoints{load_fvecs(path), {}};
    }
    if (format == "csv") {
        return load_csv(path, id_column);
    }
    throw std::invalid_argument("unknown input format '" + format + "'");
}

}  // namespace lvann
