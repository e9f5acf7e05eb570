#include "lvann/planner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lvann {

double tail_bound(std::size_t k, double alpha, double c) {
    if (k == 0 || !(alpha > 0.0) || !(c > 0.0)) {
        throw std::invalid_argument("tail_bound: k, alpha and c must be positive");
    }
    const double r2 = (alpha / c) * (alpha / c);
    const double exponent = 0.5 * static_cast<double>(k) * (1.0 - r2 + std::log(r2));
    return std::min(1.0, std::exp(exponent));
}

double gamma_bound(double alpha, double c, double nu) {
    if (!(alpha >= 1.0)) {
        throw std::invalid_argument("gamma_bound: alpha must be >= 1");
    }
    if (!(alpha < c)) {
        throw std::invalid_argument("gamma_bound: requires alpha < c, the bound degenerates");
    }
    if (!(nu >= 0.0 && nu < 1.0)) {
        throw std::invalid_argument("gamma_bound: nu must lie in [0, 1)");
    }
    const double r2 = (alpha / c) * (alpha / c);
    const double denom = r2 - 1.0 - std::log(r2);  // > 0 for alpha != c
    return 2.0 * (1.0 - nu) / denom;
}

double choose_alpha(double c) {
    if (!(c > 1.0)) {
        throw std::invalid_argument("choose_alpha: c must be > 1");
    }
    if (c < 2.0) {
        return (c + 1.0) / 2.0;
    }
    return 1.2;
}

ReductionPlan make_plan(std::size_t n, std::size_t d, double c, double nu,
                        std::uint64_t seed, const PlanOverrides& overrides) {
    if (n == 0 || d == 0) {
        throw std::invalid_argument("make_plan: n and d must be >= 1");
    }
    if (!(c > 1.0)) {
        throw std::invalid_argument("make_plan: c must be > 1");
    }
    if (!(nu >= 0.0 && nu < 1.0)) {
        throw std::invalid_argument("make_plan: nu must lie in [0, 1)");
    }

    ReductionPlan plan;
    plan.c = c;
    plan.epsilon = c - 1.0;
    plan.nu = nu;
    plan.seed = seed;
    plan.radius = 1.0;

    plan.alpha = overrides.alpha ? *overrides.alpha : choose_alpha(c);
    if (!(plan.alpha >= 1.0 && plan.alpha < c)) {
        throw std::invalid_argument("make_plan: alpha must lie in [1, c)");
    }
    plan.gamma = gamma_bound(plan.alpha, c, nu);

    if (overrides.k) {
        if (*overrides.k == 0 || *overrides.k > d) {
            throw std::invalid_argument("make_plan: k override must lie in [1, d]");
        }
        plan.k = *overrides.k;
    } else {
        const double raw = plan.gamma * std::log(static_cast<double>(n));
        plan.k = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(raw)));
        if (plan.k > d) {
            plan.k = d;
        }
    }
    // The reduction needs gamma*ln(n) < d to buy anything; at k = d we keep
    // the original dimension and run a single block.
    plan.reduced = plan.k < d;
    plan.num_blocks = (d + plan.k - 1) / plan.k;
    plan.padded_dim = plan.num_blocks * plan.k;

    if (overrides.grid_side) {
        if (!(*overrides.grid_side > 0.0)) {
            throw std::invalid_argument("make_plan: grid_side override must be positive");
        }
        plan.grid_side = *overrides.grid_side;
    } else {
        if (!(plan.alpha > 1.0)) {
            throw std::invalid_argument(
                "make_plan: alpha == 1 needs an explicit grid_side override");
        }
        plan.grid_side = (plan.alpha - 1.0) / std::sqrt(static_cast<double>(plan.k));
    }
    return plan;
}

double expected_false_positives_per_block(const ReductionPlan& plan, std::size_t n) {
    return static_cast<double>(n) * tail_bound(plan.k, plan.alpha, plan.c);
}

}  // namespace lvann
