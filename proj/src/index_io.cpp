#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include "lvann/index.hpp"

// Container layout (all fields little-endian):
//   "LVANN1"  magic, 6 bytes
//   u16       format version (currently 1)
//   u8        variant, u8 reduced
//   f64       c, epsilon, alpha, nu, gamma, radius, grid_side
//   u64       k, num_blocks, padded_dim, seed
//   f64       ingest_scale
//   u64       basis checksum (basis is regenerated on load and verified)
//   u64 n, u64 dim, i64 ids[n], f64 points[n*dim], u64 dataset checksum
//   per block: u64 cell count, then per cell (lexicographic order):
//              i64 coords[k], u64 bucket size, i64 bucket ids
static_assert(std::endian::native == std::endian::little,
              "index serialization assumes a little-endian host");

namespace lvann {

namespace {

constexpr char kMagic[6] = {'L', 'V', 'A', 'N', 'N', '1'};
constexpr std::uint16_t kFormatVersion = 1;

template <typename T>
void write_pod(std::ostream& out, const T& value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) {
        throw ParseError("index container truncated",
                         static_cast<std::int64_t>(in.tellg()));
    }
    return value;
}

std::uint64_t dataset_checksum(const Dataset& dataset) {
    std::uint64_t h = fnv1a64(dataset.ids().data(),
                              dataset.ids().size() * sizeof(std::int64_t));
    return fnv1a64(dataset.points().data().data(),
                   dataset.points().data().size() * sizeof(double), h);
}

std::uint64_t basis_checksum(const OrthonormalBasis& basis) {
    return fnv1a64(basis.rows.data().data(), basis.rows.data().size() * sizeof(double));
}

}  // namespace

void save_index(const NeighborIndex& index, std::ostream& out, double ingest_scale) {
    out.write(kMagic, sizeof(kMagic));
    write_pod(out, kFormatVersion);
    write_pod(out, static_cast<std::uint8_t>(index.variant()));
    write_pod(out, static_cast<std::uint8_t>(index.plan().reduced ? 1 : 0));
    const ReductionPlan& plan = index.plan();
    write_pod(out, plan.c);
    write_pod(out, plan.epsilon);
    write_pod(out, plan.alpha);
    write_pod(out, plan.nu);
    write_pod(out, plan.gamma);
    write_pod(out, plan.radius);
    write_pod(out, plan.grid_side);
    write_pod(out, static_cast<std::uint64_t>(plan.k));
    write_pod(out, static_cast<std::uint64_t>(plan.num_blocks));
    write_pod(out, static_cast<std::uint64_t>(plan.padded_dim));
    write_pod(out, plan.seed);
    write_pod(out, ingest_scale);
    write_pod(out, basis_checksum(index.basis()));

    const Dataset& ds = index.dataset();
    write_pod(out, static_cast<std::uint64_t>(ds.size()));
    write_pod(out, static_cast<std::uint64_t>(ds.dim()));
    out.write(reinterpret_cast<const char*>(ds.ids().data()),
              static_cast<std::streamsize>(ds.ids().size() * sizeof(std::int64_t)));
    out.write(reinterpret_cast<const char*>(ds.points().data().data()),
              static_cast<std::streamsize>(ds.points().data().size() * sizeof(double)));
    write_pod(out, dataset_checksum(ds));

    // Cells go out in lexicographic order so identical indexes serialize to
    // identical bytes regardless of hash-table history.
    for (const CellTable& table : index.tables()) {
        std::map<CellId, const std::vector<std::int64_t>*> ordered;
        for (const auto& [cell, bucket] : table) {
            ordered.emplace(cell, &bucket);
        }
        write_pod(out, static_cast<std::uint64_t>(ordered.size()));
        for (const auto& [cell, bucket] : ordered) {
            out.write(reinterpret_cast<const char*>(cell.coords.data()),
                      static_cast<std::streamsize>(cell.coords.size() *
                                                   sizeof(std::int64_t)));
            write_pod(out, static_cast<std::uint64_t>(bucket->size()));
            out.write(reinterpret_cast<const char*>(bucket->data()),
                      static_cast<std::streamsize>(bucket->size() * sizeof(std::int64_t)));
        }
    }
    if (!out) {
        throw std::runtime_error("save_index: write failed");
    }
}

void save_index(const NeighborIndex& index, const std::string& path, double ingest_scale) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("save_index: cannot open '" + path + "' for writing");
    }
    save_index(index, out, ingest_scale);
}

LoadedIndex load_index(std::istream& in) {
    char magic[6];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
        throw ParseError("not an LVANN1 index container", 0);
    }
    const auto version = read_pod<std::uint16_t>(in);
    if (version != kFormatVersion) {
        throw ParseError("unsupported index container version " + std::to_string(version));
    }
    const auto variant_byte = read_pod<std::uint8_t>(in);
    if (variant_byte > 1) {
        throw ParseError("invalid variant byte in index container");
    }
    const auto variant = static_cast<IndexVariant>(variant_byte);

    ReductionPlan plan;
    plan.reduced = read_pod<std::uint8_t>(in) != 0;
    plan.c = read_pod<double>(in);
    plan.epsilon = read_pod<double>(in);
    plan.alpha = read_pod<double>(in);
    plan.nu = read_pod<double>(in);
    plan.gamma = read_pod<double>(in);
    plan.radius = read_pod<double>(in);
    plan.grid_side = read_pod<double>(in);
    plan.k = static_cast<std::size_t>(read_pod<std::uint64_t>(in));
    plan.num_blocks = static_cast<std::size_t>(read_pod<std::uint64_t>(in));
    plan.padded_dim = static_cast<std::size_t>(read_pod<std::uint64_t>(in));
    plan.seed = read_pod<std::uint64_t>(in);
    const double ingest_scale = read_pod<double>(in);
    const auto stored_basis_sum = read_pod<std::uint64_t>(in);

    // Plausibility bounds: a corrupt length field should fail as a parse
    // error, not as an allocation of petabytes.
    if (plan.k == 0 || plan.padded_dim == 0 || plan.padded_dim > (1u << 20) ||
        plan.k > plan.padded_dim || plan.num_blocks * plan.k != plan.padded_dim) {
        throw ParseError("index container holds an implausible plan");
    }
    const auto n = static_cast<std::size_t>(read_pod<std::uint64_t>(in));
    const auto dim = static_cast<std::size_t>(read_pod<std::uint64_t>(in));
    if (n == 0 || dim == 0 || dim > plan.padded_dim ||
        n > (std::size_t{1} << 32) || n * dim > (std::size_t{1} << 31)) {
        throw ParseError("index container holds an implausible dataset size");
    }
    std::vector<std::int64_t> ids(n);
    in.read(reinterpret_cast<char*>(ids.data()),
            static_cast<std::streamsize>(n * sizeof(std::int64_t)));
    Matrix points(n, dim);
    in.read(reinterpret_cast<char*>(points.data().data()),
            static_cast<std::streamsize>(n * dim * sizeof(double)));
    if (!in) {
        throw ParseError("index container truncated inside the dataset section",
                         static_cast<std::int64_t>(in.tellg()));
    }
    const auto stored_dataset_sum = read_pod<std::uint64_t>(in);

    std::vector<CellTable> tables(plan.num_blocks);
    for (CellTable& table : tables) {
        const auto cell_count = static_cast<std::size_t>(read_pod<std::uint64_t>(in));
        table.reserve(std::min(cell_count, std::size_t{1} << 22));
        for (std::size_t i = 0; i < cell_count; ++i) {
            CellId cell;
            cell.coords.resize(plan.k);
            in.read(reinterpret_cast<char*>(cell.coords.data()),
                    static_cast<std::streamsize>(plan.k * sizeof(std::int64_t)));
            const auto bucket_size = static_cast<std::size_t>(read_pod<std::uint64_t>(in));
            if (bucket_size > n) {
                throw ParseError("index container holds an implausible bucket",
                                 static_cast<std::int64_t>(in.tellg()));
            }
            std::vector<std::int64_t> bucket(bucket_size);
            in.read(reinterpret_cast<char*>(bucket.data()),
                    static_cast<std::streamsize>(bucket_size * sizeof(std::int64_t)));
            if (!in) {
                throw ParseError("index container truncated inside a cell table",
                                 static_cast<std::int64_t>(in.tellg()));
            }
            table.emplace(std::move(cell), std::move(bucket));
        }
    }

    Dataset dataset = [&]() {
        try {
            return Dataset(std::move(points), std::move(ids));
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("index container holds an invalid dataset: ") +
                             e.what());
        }
    }();
    if (dataset_checksum(dataset) != stored_dataset_sum) {
        throw ParseError("index container dataset checksum mismatch");
    }

    NeighborIndex index =
        NeighborIndex::restore(variant, plan, std::move(dataset), std::move(tables));
    if (basis_checksum(index.basis()) != stored_basis_sum) {
        throw ParseError(
            "regenerated basis does not match the one this index was built with "
            "(incompatible random generator)");
    }
    return LoadedIndex{std::move(index), ingest_scale};
}

LoadedIndex load_index(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("load_index: cannot open '" + path + "'");
    }
    return load_index(in);
}

}  // namespace lvann
