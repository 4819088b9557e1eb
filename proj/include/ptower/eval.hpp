#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "ptower/expr.hpp"
#include "ptower/interval.hpp"
#include "ptower/rational.hpp"

namespace ptower
{

struct EvalOptions {
    // Refinement stops (and reports exhaustion) above this many bits.
    mpfr_prec_t precision_cap = mpfr_prec_t{1} << 20;
    // Values with |log10| provably above this are Astronomical.
    double magnitude_cap_log10 = 1e6;
};

enum class BallKind { exact_rational, interval, log_interval, astronomical };

/// Rigorous enclosure of a positive real value.
class BallValue
{
public:
    static BallValue exact(Rational q);
    static BallValue interval(Interval iv);
    // Enclosure of log10 of the value.
    static BallValue log_interval(Interval iv);
    static BallValue astronomical(bool huge);

    BallKind kind() const { return kind_; }
    bool is_exact() const { return kind_ == BallKind::exact_rational; }
    bool is_interval() const { return kind_ == BallKind::interval; }
    bool is_log_interval() const { return kind_ == BallKind::log_interval; }
    bool is_astronomical() const { return kind_ == BallKind::astronomical; }

    const Rational &rational() const { return *exact_; }
    const Interval &bounds() const { return iv_; }
    // Astronomical only: true for huge, false for infinitesimal.
    bool huge() const { return huge_; }

    // Interval enclosure of the value itself (exact values are rounded
    // outward at prec). Not available for log/astronomical kinds.
    Interval enclosure(mpfr_prec_t prec) const;

private:
    BallValue() = default;

    BallKind kind_ = BallKind::astronomical;
    std::optional<Rational> exact_;
    Interval iv_;
    bool huge_ = false;
};

// Textual form used in the cache and every output format.
struct BallText {
    std::string kind;
    std::string mid;
    std::string rad;
};
// `prec` controls the digits printed for exact rationals.
BallText to_text(const BallValue &v, mpfr_prec_t prec = 128);
std::string kind_tag(const BallValue &v);

/// First certified decimal digits of a value (truncation, never rounding).
struct DigitString {
    mpz_class integer_part;
    std::string digits;

    std::size_t certified_length() const { return digits.size(); }
    std::string str() const { return integer_part.get_str() + "." + digits; }
};

// Exact value when the expression folds to a rational under the rewrite
// rules and fold caps; absent means "not certified", not "irrational".
std::optional<Rational> exact_rational(const Expr &e);

// Enclosure of log10(value) computed from log10(b^e) = e * log10(b), or an
// Astronomical flag when |log10| provably exceeds the magnitude cap.
BallValue log_magnitude(const Expr &e, const EvalOptions &opts = {});

// Raw log10 enclosure at one precision (no magnitude classification).
Interval log10_enclosure(const Expr &e, mpfr_prec_t prec);

// Single evaluation at a fixed working precision (>= 16 bits).
BallValue eval_ball(const Expr &e, mpfr_prec_t prec, const EvalOptions &opts = {});

/// Successive enclosures of one expression at doubling precision. Each new
/// enclosure is intersected with the previous one, so the sequence is nested.
class Refiner
{
public:
    explicit Refiner(const Expr &e, const EvalOptions &opts = {}, mpfr_prec_t start_prec = 64);

    const BallValue &current() const { return cur_; }
    mpfr_prec_t precision() const { return prec_; }
    const Expr &expr() const { return expr_; }

    bool can_step() const;
    // Doubles the working precision. Returns false (and leaves the state
    // untouched) when the cap would be exceeded or the value is already exact.
    bool step();

private:
    Expr expr_;
    EvalOptions opts_;
    mpfr_prec_t prec_;
    BallValue cur_;
};

// Width-driven refinement starting at 64 bits; throws precision_exhausted.
BallValue refine(const Expr &e, const Float &target_width, const EvalOptions &opts = {});

// 10^exp10 rounded down, convenient for target widths.
Float pow10_float(long exp10);

// First k digits of the fractional part. Throws ambiguous_digit or
// magnitude_error.
DigitString digits(const Expr &e, std::size_t k, const EvalOptions &opts = {});

// Long division digits of an exact rational.
DigitString rational_digits(const mpq_class &q, std::size_t k);

// The single cell index floor(x * 10^k) if the interval lies in one k-digit
// decimal cell.
std::optional<mpz_class> decimal_cell(const Interval &iv, std::size_t k);

} // namespace ptower
