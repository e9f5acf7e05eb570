#pragma once

#include <cstdint>
#include <optional>

namespace lvann {

/// Every tuned parameter of one reduction + index configuration. A plan is
/// a pure function of its inputs; building twice from the same arguments
/// yields identical plans (and, downstream, identical indexes).
struct ReductionPlan {
    double c = 0.0;        // approximation factor, > 1
    double epsilon = 0.0;  // c - 1
    double alpha = 0.0;    // approximation factor kept in reduced space, in [1, c)
    double nu = 0.0;       // query/pre-processing trade-off, in [0, 1)
    double gamma = 0.0;    // reduced-dimension coefficient, k ~ gamma * ln n
    std::size_t k = 0;          // reduced dimension per block
    std::size_t num_blocks = 0; // padded_dim / k
    std::size_t padded_dim = 0; // smallest multiple of k >= d
    double radius = 1.0;   // query radius; inputs are normalized so this is 1
    double grid_side = 0.0;
    std::uint64_t seed = 0;
    bool reduced = true;   // false when gamma*ln(n) >= d and we keep dimension d

    bool operator==(const ReductionPlan&) const = default;
};

struct PlanOverrides {
    std::optional<std::size_t> k;
    std::optional<double> grid_side;
    std::optional<double> alpha;
};

/// Upper bound on P[|block image of x| <= alpha] for |x| >= c:
/// exp((k/2) * (1 - (alpha/c)^2 + ln((alpha/c)^2))), clamped to <= 1.
/// Non-trivial (strictly below 1) exactly when alpha != c.
double tail_bound(std::size_t k, double alpha, double c);

/// gamma < 2(1-nu) / ((alpha/c)^2 - 1 - 2 ln(alpha/c)). The denominator is
/// strictly positive for alpha < c, and shrinks as alpha approaches c, so
/// the bound grows with alpha.
double gamma_bound(double alpha, double c, double nu);

/// (c+1)/2 for c < 2; the constant 1.2 for c >= 2 (1.2 < 2*e^{-1/2}, the
/// largest constant the tail analysis tolerates there).
double choose_alpha(double c);

/// Evaluates the parameter formulas for an (n, d, c, nu) instance.
/// k = max(1, ceil(gamma * ln n)) unless overridden; if that reaches d the
/// plan falls back to reduced=false with k = d (a single block).
/// grid_side defaults to (alpha-1)/sqrt(k); with an alpha override of
/// exactly 1 the caller must override grid_side too.
ReductionPlan make_plan(std::size_t n, std::size_t d, double c, double nu,
                        std::uint64_t seed, const PlanOverrides& overrides = {});

/// Diagnostic: the expected number of false positives contributed by one
/// block on an n-point far-only dataset, n * tail_bound(k, alpha, c).
/// Reported, never asserted; the constant in front is not pinned down.
double expected_false_positives_per_block(const ReductionPlan& plan, std::size_t n);

}  // namespace lvann
