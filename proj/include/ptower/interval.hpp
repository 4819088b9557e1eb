#pragma once

#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

#include "ptower/rational.hpp"

namespace ptower
{

/// Owning wrapper around an mpfr_t.
class Float
{
public:
    explicit Float(mpfr_prec_t prec = 64)
    {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Float(const Float &o)
    {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Float(Float &&o) noexcept
    {
        // Steal by swapping with a freshly initialised minimal value.
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    Float &operator=(const Float &o)
    {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Float &operator=(Float &&o) noexcept
    {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Float() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    bool is_inf() const { return mpfr_inf_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }

    static Float from_string(const std::string &s, mpfr_prec_t prec, mpfr_rnd_t rnd);

    // Scientific decimal with the given number of significant digits.
    std::string to_string(int digits, mpfr_rnd_t rnd = MPFR_RNDN) const;

private:
    mpfr_t v_;
};

// Raise MPFR's exponent range to its maximum for the calling thread.
void widen_exponent_range();

// Exact conversion of a finite Float to a rational (any sign).
mpq_class to_mpq(const Float &f);

/// Closed interval [lo, hi] with endpoints rounded outward. Endpoints may be
/// 0 or +inf when the underlying float range is exceeded; the enclosure stays
/// valid in that case, only looser.
struct Interval {
    Float lo;
    Float hi;

    Interval() = default;
    Interval(Float l, Float h) : lo(std::move(l)), hi(std::move(h)) {}

    static Interval point(const Rational &q, mpfr_prec_t prec);
    static Interval point(const mpq_class &q, mpfr_prec_t prec);

    // Working precision of the endpoints.
    mpfr_prec_t prec() const { return lo.prec() > hi.prec() ? lo.prec() : hi.prec(); }

    // hi - lo, rounded up.
    Float width() const;
    bool width_at_most(const Float &w) const;

    bool contains(const mpq_class &q) const;
    bool contains(const Interval &inner) const;
    bool overlaps(const Interval &o) const;
    // Strict interior containment in (a, b).
    bool strictly_inside(const mpq_class &a, const mpq_class &b) const;

    bool is_finite() const { return !lo.is_inf() && !hi.is_inf() && !lo.is_nan() && !hi.is_nan(); }
};

Interval intersect(const Interval &a, const Interval &b);

// Elementary functions with outward rounding.
Interval iv_log(const Interval &x, mpfr_prec_t prec);
Interval iv_log10(const Interval &x, mpfr_prec_t prec);
Interval iv_exp(const Interval &x, mpfr_prec_t prec);
Interval iv_exp10(const Interval &x, mpfr_prec_t prec);
Interval iv_mul(const Interval &a, const Interval &b, mpfr_prec_t prec);

// Midpoint/radius decimal rendering: the returned radius is rounded up so
// that [mid - rad, mid + rad] contains the interval.
struct MidRad {
    std::string mid;
    std::string rad;
};
MidRad mid_rad(const Interval &x);

} // namespace ptower
