#pragma once

#include <cstdint>

namespace lvann {

/// Empirical audit of the reduction guarantees for one (d, k) geometry:
///  - tail: fraction of uniformly-directed vectors of norm exactly c whose
///    first-block image has norm <= alpha, next to the analytic bound;
///  - coverage: count of unit vectors whose best block image exceeds
///    1 + 1e-9 (must be zero, the property is deterministic).
struct LemmaCheck {
    std::size_t d = 0;
    std::size_t k = 0;
    std::size_t trials = 0;
    double c = 0.0;
    double alpha = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t tail_hits = 0;
    double empirical_tail = 0.0;
    double analytic_tail = 0.0;
    std::uint64_t coverage_violations = 0;
};

/// Requires k to divide d (so the sampled sphere is the one the blocks
/// partition). Deterministic for fixed arguments regardless of threading.
LemmaCheck verify_reduction_lemma(std::size_t d, std::size_t k, double c, double alpha,
                                  std::size_t trials, std::uint64_t seed);

}  // namespace lvann
