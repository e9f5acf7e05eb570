// Compares the OpenMP kernels against their serial references: wall time,
// speedup, and a bitwise equality check (the parallel paths must not change
// a single bit of the output).

#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lvann/index.hpp"
#include "lvann/kernels.hpp"
#include "lvann/linalg.hpp"
#include "lvann/planner.hpp"

using namespace lvann;

namespace {

double now_s() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    Matrix m(rows, cols);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (double& v : m.data()) {
        v = gauss(rng);
    }
    return m;
}

void bench_matmul() {
    const std::size_t m = 4096, d = 256;
    const Matrix a = random_matrix(m, d, 1);
    const Matrix b = random_matrix(d, d, 2);

    Matrix serial, parallel;
    double t0 = now_s();
    multiply_abt_serial(a, b, serial, 0.5);
    const double serial_s = now_s() - t0;

    t0 = now_s();
    multiply_abt(a, b, parallel, 0.5);
    const double parallel_s = now_s() - t0;

    const bool equal = serial == parallel;
    const double gflops = 2.0 * m * d * d / 1e9;
    std::printf("%-28s %10.4f s %10.4f s %7.2fx   %8.2f GF/s   bitwise %s\n",
                "batch projection (A*B^T)", serial_s, parallel_s, serial_s / parallel_s,
                gflops / parallel_s, equal ? "equal" : "DIFFER");
}

void bench_query_batch() {
    const std::size_t n = 20000, d = 32, m = 1000;
    const Matrix points = random_matrix(n, d, 3);
    const Dataset dataset = Dataset::with_default_ids(points);
    PlanOverrides overrides;
    overrides.k = 4;
    overrides.grid_side = 0.75;
    const ReductionPlan plan = make_plan(n, d, 2.0, 0.0, 42, overrides);
    const NeighborIndex index = NeighborIndex::build(dataset, plan, IndexVariant::kFastPre);
    const Matrix queries = random_matrix(m, d, 4);

    double t0 = now_s();
    std::vector<QueryResult> sequential;
    sequential.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        sequential.push_back(index.query(queries.row(i)));
    }
    const double serial_s = now_s() - t0;

    t0 = now_s();
    const std::vector<QueryResult> batched = index.query_batch(queries);
    const double parallel_s = now_s() - t0;

    const bool equal = sequential == batched;
    std::printf("%-28s %10.4f s %10.4f s %7.2fx   %8.0f q/s    results %s\n",
                "fast-pre batch query", serial_s, parallel_s, serial_s / parallel_s,
                m / parallel_s, equal ? "equal" : "DIFFER");
}

void bench_build() {
    const std::size_t n = 5000, d = 32;
    const Matrix points = random_matrix(n, d, 5);
    const Dataset dataset = Dataset::with_default_ids(points);
    PlanOverrides overrides;
    overrides.k = 4;
    overrides.grid_side = 0.75;
    const ReductionPlan plan = make_plan(n, d, 2.0, 0.0, 42, overrides);

#ifdef _OPENMP
    const int threads = omp_get_max_threads();
    omp_set_num_threads(1);
#endif
    double t0 = now_s();
    const NeighborIndex one =
        NeighborIndex::build(dataset, plan, IndexVariant::kFastQuery);
    const double serial_s = now_s() - t0;
#ifdef _OPENMP
    omp_set_num_threads(threads);
#endif

    t0 = now_s();
    const NeighborIndex many =
        NeighborIndex::build(dataset, plan, IndexVariant::kFastQuery);
    const double parallel_s = now_s() - t0;

    bool equal = one.tables().size() == many.tables().size();
    for (std::size_t b = 0; equal && b < one.tables().size(); ++b) {
        equal = one.tables()[b] == many.tables()[b];
    }
    std::printf("%-28s %10.4f s %10.4f s %7.2fx   %8.0f pt/s   tables %s\n",
                "fast-query build", serial_s, parallel_s, serial_s / parallel_s,
                n / parallel_s, equal ? "equal" : "DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run serial code\n");
#endif
    std::printf("%-28s %12s %12s %8s\n", "kernel", "serial", "parallel", "speedup");
    bench_matmul();
    bench_query_batch();
    bench_build();
    return 0;
}
