#include "ptower/approx.hpp"

#include <algorithm>

#include "ptower/error.hpp"

namespace ptower
{

std::string to_string(ShapeFilter s)
{
    switch (s) {
    case ShapeFilter::full:
        return "full";
    case ShapeFilter::simple:
        return "simple";
    case ShapeFilter::double_pow:
        return "double";
    case ShapeFilter::atomic:
        return "atomic";
    }
    return "?";
}

ShapeFilter parse_shape(const std::string &s)
{
    if (s == "full") {
        return ShapeFilter::full;
    }
    if (s == "simple") {
        return ShapeFilter::simple;
    }
    if (s == "double") {
        return ShapeFilter::double_pow;
    }
    if (s == "atomic") {
        return ShapeFilter::atomic;
    }
    throw domain_error("unknown shape '" + s + "' (expected full, simple, double or atomic)");
}

namespace
{

bool is_leaf_pow(const Expr &e)
{
    return e.is_pow() && e.base().is_leaf() && e.exponent().is_leaf();
}

} // namespace

bool matches_shape(const Expr &e, ShapeFilter s)
{
    switch (s) {
    case ShapeFilter::full:
        return true;
    case ShapeFilter::simple:
        return e.is_pow() && e.base().is_leaf() && is_leaf_pow(e.exponent());
    case ShapeFilter::double_pow:
        return e.is_pow() && is_leaf_pow(e.base()) && is_leaf_pow(e.exponent());
    case ShapeFilter::atomic:
        // Every collapse of the complete height-3 template is a tree of
        // height <= 3.
        return e.height() <= 3;
    }
    return false;
}

namespace
{

struct Scan {
    std::vector<Expr> candidates;
    std::vector<unsigned long> weights;
    std::vector<ErrorBounds> bounds;
};

Scan scan(const Target &target, unsigned long max_weight, ShapeFilter shape, const ApproxOptions &opts)
{
    if (max_weight < 2) {
        throw domain_error("max weight must be at least 2");
    }
    Scan s;
    ClassGenerator gen;
    for (unsigned long w = 2; w <= max_weight; ++w) {
        for (const Expr &e : gen.get(w)) {
            if (matches_shape(e, shape)) {
                s.candidates.push_back(e);
                s.weights.push_back(w);
            }
        }
    }
    s.bounds = certify_errors(s.candidates, target, opts.cap_width, opts.eval, opts.threads);
    return s;
}

// Minimiser of the certified upper bound over the first `n` candidates;
// candidates are in structural order, so the first minimum wins ties.
std::optional<std::size_t> best_of(const Scan &s, std::size_t n)
{
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < n; ++i) {
        if (s.bounds[i].skipped) {
            continue;
        }
        if (!best || mpfr_less_p(s.bounds[i].upper.get(), s.bounds[*best].upper.get())) {
            best = i;
        }
    }
    return best;
}

ApproxRecord make_record(const Target &target, ShapeFilter shape, unsigned long w, const Scan &s, std::size_t n)
{
    const auto best = best_of(s, n);
    if (!best) {
        throw no_candidate("shape '" + to_string(shape) + "' admits no comparable expression of weight <= "
                           + std::to_string(w));
    }
    const ErrorBounds &b = s.bounds[*best];
    return ApproxRecord{target, shape, w, s.candidates[*best], b.lower, b.upper, b.precision, b.indistinguishable, n};
}

} // namespace

ApproxRecord approximate(const Target &target, unsigned long max_weight, ShapeFilter shape,
                         const ApproxOptions &opts)
{
    const Scan s = scan(target, max_weight, shape, opts);
    return make_record(target, shape, max_weight, s, s.candidates.size());
}

std::vector<ApproxRecord> convergence_table(const Target &target, const std::vector<unsigned long> &weights,
                                            ShapeFilter shape, const ApproxOptions &opts)
{
    if (weights.empty()) {
        return {};
    }
    for (std::size_t i = 1; i < weights.size(); ++i) {
        if (weights[i] <= weights[i - 1]) {
            throw domain_error("convergence table weights must be strictly increasing");
        }
    }
    // One scan at the largest budget; each row is a prefix of it.
    const Scan s = scan(target, weights.back(), shape, opts);
    std::vector<ApproxRecord> rows;
    for (unsigned long w : weights) {
        const auto n = static_cast<std::size_t>(
            std::upper_bound(s.weights.begin(), s.weights.end(), w) - s.weights.begin());
        rows.push_back(make_record(target, shape, w, s, n));
    }
    return rows;
}

} // namespace ptower
