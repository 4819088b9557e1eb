#include "ptower/kernels.hpp"

#include <omp.h>

#include "ptower/error.hpp"

namespace ptower
{

namespace
{

int resolve_threads(ThreadCount t)
{
    return t > 0 ? t : omp_get_max_threads();
}

DigitOutcome extract_one(const Expr &e, std::size_t k, const EvalOptions &opts)
{
    DigitOutcome out;
    try {
        out.digits = digits(e, k, opts);
    } catch (const ambiguous_digit &ex) {
        out.failure = std::string("ambiguous: ") + ex.what();
    } catch (const magnitude_error &ex) {
        out.failure = std::string("astronomical: ") + ex.what();
    }
    return out;
}

// err = |c - t| for c in C, t in T.
void bound_distance(const Interval &c, const Interval &t, ErrorBounds &out)
{
    Float a(64), b(64);
    mpfr_sub(a.get(), c.hi.get(), t.lo.get(), MPFR_RNDU);
    mpfr_sub(b.get(), t.hi.get(), c.lo.get(), MPFR_RNDU);
    mpfr_max(out.upper.get(), a.get(), b.get(), MPFR_RNDU);
    if (c.overlaps(t)) {
        mpfr_set_zero(out.lower.get(), 1);
        return;
    }
    mpfr_sub(a.get(), c.lo.get(), t.hi.get(), MPFR_RNDD);
    mpfr_sub(b.get(), t.lo.get(), c.hi.get(), MPFR_RNDD);
    mpfr_max(out.lower.get(), a.get(), b.get(), MPFR_RNDD);
}

} // namespace

std::vector<BallValue> evaluate_all(std::span<const Expr> exprs, mpfr_prec_t prec, const EvalOptions &opts,
                                    ThreadCount threads)
{
    std::vector<BallValue> out(exprs.size(), BallValue::astronomical(true));
    const auto n = static_cast<std::ptrdiff_t>(exprs.size());
#pragma omp parallel for schedule(dynamic, 8) num_threads(resolve_threads(threads))
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = eval_ball(exprs[static_cast<std::size_t>(i)], prec, opts);
    }
    return out;
}

std::vector<BallValue> evaluate_all_serial(std::span<const Expr> exprs, mpfr_prec_t prec,
                                           const EvalOptions &opts)
{
    std::vector<BallValue> out;
    out.reserve(exprs.size());
    for (const auto &e : exprs) {
        out.push_back(eval_ball(e, prec, opts));
    }
    return out;
}

std::vector<DigitOutcome> extract_digits_all(std::span<const Expr> exprs, std::span<const std::size_t> counts,
                                             const EvalOptions &opts, ThreadCount threads)
{
    std::vector<DigitOutcome> out(exprs.size());
    const auto n = static_cast<std::ptrdiff_t>(exprs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_threads(threads))
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        out[u] = extract_one(exprs[u], counts[u], opts);
    }
    return out;
}

std::vector<DigitOutcome> extract_digits_all_serial(std::span<const Expr> exprs,
                                                    std::span<const std::size_t> counts,
                                                    const EvalOptions &opts)
{
    std::vector<DigitOutcome> out;
    out.reserve(exprs.size());
    for (std::size_t i = 0; i < exprs.size(); ++i) {
        out.push_back(extract_one(exprs[i], counts[i], opts));
    }
    return out;
}

ErrorBounds certify_error(const Expr &candidate, const Target &target, const Float &cap_width,
                          const EvalOptions &opts)
{
    ErrorBounds out;
    Refiner r(candidate, opts);
    if (r.current().is_astronomical()) {
        out.skipped = true;
        mpfr_set_inf(out.lower.get(), 1);
        mpfr_set_inf(out.upper.get(), 1);
        return out;
    }
    // Slack so a custom target's fixed radius does not block termination.
    Float target_cap(64);
    mpfr_set_q(target_cap.get(), target.min_width().get_mpq_t(), MPFR_RNDD);
    mpfr_add(target_cap.get(), target_cap.get(), cap_width.get(), MPFR_RNDD);

    // Exact candidates do not step; track precision separately.
    mpfr_prec_t prec = r.precision();
    while (true) {
        const Interval c = r.current().enclosure(prec);
        const Interval t = target.enclosure(prec + 16);
        bound_distance(c, t, out);
        out.precision = prec;
        if (!c.overlaps(t)) {
            return out;
        }
        if (c.width_at_most(cap_width) && t.width_at_most(target_cap)) {
            out.indistinguishable = true;
            return out;
        }
        if (r.current().is_exact()) {
            if (prec * 2 > opts.precision_cap) {
                out.indistinguishable = true;
                return out;
            }
            prec *= 2;
        } else {
            if (!r.step()) {
                out.indistinguishable = true;
                return out;
            }
            prec = r.precision();
        }
    }
}

std::vector<ErrorBounds> certify_errors(std::span<const Expr> candidates, const Target &target,
                                        const Float &cap_width, const EvalOptions &opts, ThreadCount threads)
{
    std::vector<ErrorBounds> out(candidates.size());
    const auto n = static_cast<std::ptrdiff_t>(candidates.size());
#pragma omp parallel for schedule(dynamic, 4) num_threads(resolve_threads(threads))
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        out[u] = certify_error(candidates[u], target, cap_width, opts);
    }
    return out;
}

std::vector<ErrorBounds> certify_errors_serial(std::span<const Expr> candidates, const Target &target,
                                               const Float &cap_width, const EvalOptions &opts)
{
    std::vector<ErrorBounds> out;
    out.reserve(candidates.size());
    for (const auto &c : candidates) {
        out.push_back(certify_error(c, target, cap_width, opts));
    }
    return out;
}

} // namespace ptower
