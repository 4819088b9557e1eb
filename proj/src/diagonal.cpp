#include "ptower/diagonal.hpp"

#include <cmath>

#include "ptower/error.hpp"

namespace ptower
{

DiagonalReport diagonal(std::size_t n, const Enumeration &en, ThreadCount threads)
{
    if (n < 1) {
        throw domain_error("diagonal length must be at least 1");
    }
    const std::vector<std::size_t> fresh = en.new_value_indices();
    if (fresh.size() < n) {
        throw range_error("enumeration to weight " + std::to_string(en.max_weight()) + " has only "
                          + std::to_string(fresh.size()) + " new values, " + std::to_string(n) + " needed");
    }
    std::vector<Expr> exprs;
    std::vector<std::size_t> counts;
    exprs.reserve(n);
    counts.reserve(n);
    for (std::size_t k = 1; k <= n; ++k) {
        exprs.push_back(en.expr_at(fresh[k - 1]).expr);
        counts.push_back(k);
    }
    const auto outcomes = extract_digits_all(exprs, counts, en.config().eval, threads);

    DiagonalReport r;
    r.n = n;
    r.diagonal_digits.integer_part = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        const DigitOutcome &o = outcomes[k - 1];
        DiagonalWitness w{k, fresh[k - 1], std::nullopt, 5};
        if (o.digits) {
            w.value_digit = o.digits->digits.back() - '0';
            w.diagonal_digit = anti_digit(*w.value_digit);
        } else {
            r.skipped.push_back({k, o.failure});
        }
        r.diagonal_digits.digits += static_cast<char>('0' + w.diagonal_digit);
        r.witnesses.push_back(w);
    }
    return r;
}

namespace
{

// k-th fractional digit by direct evaluation at escalating precision,
// starting from twice the bits the digit position needs and allowed to run
// to twice the enumeration's precision cap.
std::optional<int> reextract(const Expr &e, std::size_t k, const EvalOptions &opts)
{
    const BallValue first = eval_ball(e, 64, opts);
    if (first.is_astronomical()) {
        return std::nullopt;
    }
    if (first.is_exact()) {
        const DigitString d = rational_digits(first.rational().to_mpq(), k);
        return d.digits.back() - '0';
    }
    const Float &hi = first.bounds().hi;
    const double int_bits = hi.is_inf() || hi.is_zero() ? 0.0 : std::max<double>(0.0, mpfr_get_exp(hi.get()));
    auto prec = static_cast<mpfr_prec_t>(
        2.0 * (std::ceil(static_cast<double>(k) * 3.3219280948873623) + int_bits + 32));
    const mpfr_prec_t cap = std::max(2 * opts.precision_cap, prec);
    for (; prec <= cap; prec *= 2) {
        const BallValue v = eval_ball(e, prec, opts);
        if (auto cell = decimal_cell(v.bounds(), k)) {
            mpz_class digit;
            mpz_fdiv_r_ui(digit.get_mpz_t(), cell->get_mpz_t(), 10);
            return static_cast<int>(digit.get_ui());
        }
    }
    return std::nullopt;
}

Verification fail(std::size_t k, std::string msg)
{
    return Verification{false, k, std::move(msg)};
}

} // namespace

Verification verify(const DiagonalReport &report, const Enumeration &en)
{
    if (report.witnesses.size() != report.n || report.diagonal_digits.digits.size() != report.n) {
        return Verification{false, std::nullopt, "report length does not match n"};
    }
    const std::vector<std::size_t> fresh = en.new_value_indices();
    if (fresh.size() < report.n) {
        return Verification{false, std::nullopt, "enumeration is shorter than the report"};
    }
    std::vector<bool> skipped(report.n + 1, false);
    for (const auto &s : report.skipped) {
        if (s.position >= 1 && s.position <= report.n) {
            skipped[s.position] = true;
        }
    }
    for (std::size_t k = 1; k <= report.n; ++k) {
        const DiagonalWitness &w = report.witnesses[k - 1];
        const int d = report.diagonal_digits.digits[k - 1] - '0';
        if (w.position != k || w.entry_index != fresh[k - 1]) {
            return fail(k, "witness " + std::to_string(k) + " does not refer to the k-th new value");
        }
        if ((d != 4 && d != 5) || d != w.diagonal_digit) {
            return fail(k, "diagonal digit " + std::to_string(k) + " is not a recorded 4/5 digit");
        }
        if (skipped[k]) {
            continue;
        }
        const auto actual = reextract(en.expr_at(w.entry_index).expr, k, en.config().eval);
        if (!actual) {
            return fail(k, "digit " + std::to_string(k) + " could not be re-extracted");
        }
        if (!w.value_digit || *w.value_digit != *actual) {
            return fail(k, "witness digit " + std::to_string(k) + " disagrees with re-extraction");
        }
        if (d == *actual) {
            return fail(k, "diagonal digit " + std::to_string(k) + " equals the value's digit "
                               + std::to_string(*actual));
        }
    }
    return Verification{true, std::nullopt, "all " + std::to_string(report.n - report.skipped.size())
                                                + " witnessed positions differ"};
}

} // namespace ptower
