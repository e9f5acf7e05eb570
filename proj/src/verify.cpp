#include "lvann/verify.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "lvann/kernels.hpp"
#include "lvann/linalg.hpp"
#include "lvann/planner.hpp"

namespace lvann {

LemmaCheck verify_reduction_lemma(std::size_t d, std::size_t k, double c, double alpha,
                                  std::size_t trials, std::uint64_t seed) {
    if (k == 0 || k > d || d % k != 0) {
        throw std::invalid_argument("verify_reduction_lemma: k must divide d");
    }
    if (!(c > 0.0) || !(alpha > 0.0) || trials == 0) {
        throw std::invalid_argument("verify_reduction_lemma: need c > 0, alpha > 0, trials >= 1");
    }

    const OrthonormalBasis basis = random_orthonormal_basis(d, seed);
    const std::size_t num_blocks = d / k;
    const double scale_sq = static_cast<double>(d) / static_cast<double>(k);

    std::uint64_t tail_hits = 0;
    std::uint64_t coverage_violations = 0;

    // Each trial draws its own generator from the trial number, so the tally
    // does not depend on the thread count.
#pragma omp parallel for schedule(static) reduction(+ : tail_hits, coverage_violations)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t) {
        std::mt19937_64 rng(mix64(seed ^ (0x51ed2701a13fULL + static_cast<std::uint64_t>(t))));
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<double> u(d);
        double norm_sq;
        do {
            norm_sq = 0.0;
            for (double& v : u) {
                v = gauss(rng);
                norm_sq += v * v;
            }
        } while (!(norm_sq > 0.0));
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (double& v : u) {
            v *= inv;
        }

        // One change of basis serves both audits: block norms of the unit
        // vector, then the norm-c copy is just a factor of c.
        double min_block_sq = 0.0;
        double first_block_sq = 0.0;
        for (std::size_t b = 0; b < num_blocks; ++b) {
            double block_sq = 0.0;
            for (std::size_t r = 0; r < k; ++r) {
                const double coeff = dot(basis.rows.row_ptr(b * k + r), u.data(), d);
                block_sq += coeff * coeff;
            }
            block_sq *= scale_sq;
            if (b == 0) {
                first_block_sq = block_sq;
                min_block_sq = block_sq;
            } else {
                min_block_sq = std::min(min_block_sq, block_sq);
            }
        }

        if (c * std::sqrt(first_block_sq) <= alpha) {
            ++tail_hits;
        }
        const double bound = 1.0 + 1e-9;
        if (std::sqrt(min_block_sq) > bound) {
            ++coverage_violations;
        }
    }

    LemmaCheck check;
    check.d = d;
    check.k = k;
    check.trials = trials;
    check.c = c;
    check.alpha = alpha;
    check.seed = seed;
    check.tail_hits = tail_hits;
    check.empirical_tail = static_cast<double>(tail_hits) / static_cast<double>(trials);
    check.analytic_tail = tail_bound(k, alpha, c);
    check.coverage_violations = coverage_violations;
    return check;
}

}  // namespace lvann
