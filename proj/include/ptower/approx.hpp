#pragma once

#include <string>
#include <vector>

#include "ptower/enumerate.hpp"
#include "ptower/expr.hpp"
#include "ptower/kernels.hpp"
#include "ptower/target.hpp"

namespace ptower
{

/// Tree shapes the search can be restricted to.
enum class ShapeFilter {
    full,   // every expression
    simple, // r1^(r2^r3)
    double_pow, // (r1^r2)^(r3^r4)
    atomic, // a1^a2 with a1, a2 of the double shape, or any collapse of it
};

std::string to_string(ShapeFilter s);
// Accepts full, simple, double, atomic.
ShapeFilter parse_shape(const std::string &s);

bool matches_shape(const Expr &e, ShapeFilter s);

struct ApproxRecord {
    Target target;
    ShapeFilter shape;
    unsigned long max_weight;
    Expr best_expr;
    Float error_lower_bound;
    Float error_upper_bound;
    mpfr_prec_t certified_precision;
    // The best candidate could not be separated from the target.
    bool indistinguishable;
    std::size_t candidates_scanned;
};

struct ApproxOptions {
    EvalOptions eval;
    // Width at which overlapping enclosures are declared indistinguishable.
    Float cap_width = pow10_float(-256);
    ThreadCount threads = 0;
};

// Exhaustive scan of all canonical expressions of weight <= max_weight that
// pass the shape filter. Throws no_candidate when the filter admits nothing.
ApproxRecord approximate(const Target &target, unsigned long max_weight, ShapeFilter shape,
                         const ApproxOptions &opts = {});

// One record per weight (strictly increasing); a row with no candidate
// throws no_candidate.
std::vector<ApproxRecord> convergence_table(const Target &target, const std::vector<unsigned long> &weights,
                                            ShapeFilter shape, const ApproxOptions &opts = {});

} // namespace ptower
