#pragma once

// Data-parallel kernels. Each OpenMP kernel has a serial twin that computes
// the identical result; the twins exist for tests and the benchmark.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ptower/eval.hpp"
#include "ptower/expr.hpp"
#include "ptower/target.hpp"

namespace ptower
{

// Number of OpenMP threads to use; 0 means the runtime default.
using ThreadCount = int;

std::vector<BallValue> evaluate_all(std::span<const Expr> exprs, mpfr_prec_t prec, const EvalOptions &opts,
                                    ThreadCount threads = 0);
std::vector<BallValue> evaluate_all_serial(std::span<const Expr> exprs, mpfr_prec_t prec,
                                           const EvalOptions &opts);

/// Result of extracting digit position k of one value.
struct DigitOutcome {
    std::optional<DigitString> digits;
    // Reason the extraction failed; empty on success.
    std::string failure;
};

// outcome[i] = digits(exprs[i], counts[i]).
std::vector<DigitOutcome> extract_digits_all(std::span<const Expr> exprs, std::span<const std::size_t> counts,
                                             const EvalOptions &opts, ThreadCount threads = 0);
std::vector<DigitOutcome> extract_digits_all_serial(std::span<const Expr> exprs,
                                                    std::span<const std::size_t> counts,
                                                    const EvalOptions &opts);

/// Certified distance between one candidate and a target.
struct ErrorBounds {
    Float lower;
    Float upper;
    // Working precision at which the bounds were certified.
    mpfr_prec_t precision = 0;
    // Enclosures still overlap at the width/precision cap.
    bool indistinguishable = false;
    // Candidate is Astronomical and was not compared.
    bool skipped = false;
};

// Refines candidate and target together until their enclosures separate or
// both are narrower than `cap_width` (or the precision cap is hit).
ErrorBounds certify_error(const Expr &candidate, const Target &target, const Float &cap_width,
                          const EvalOptions &opts);

std::vector<ErrorBounds> certify_errors(std::span<const Expr> candidates, const Target &target,
                                        const Float &cap_width, const EvalOptions &opts, ThreadCount threads = 0);
std::vector<ErrorBounds> certify_errors_serial(std::span<const Expr> candidates, const Target &target,
                                               const Float &cap_width, const EvalOptions &opts);

} // namespace ptower
