#include "ptower/interval.hpp"

#include <cmath>
#include <stdexcept>

#include "ptower/decimal.hpp"
#include "ptower/error.hpp"

namespace ptower
{

void widen_exponent_range()
{
    thread_local bool done = false;
    if (!done) {
        mpfr_set_emin(mpfr_get_emin_min());
        mpfr_set_emax(mpfr_get_emax_max());
        done = true;
    }
}

Float Float::from_string(const std::string &s, mpfr_prec_t prec, mpfr_rnd_t rnd)
{
    Float f(prec);
    if (mpfr_set_str(f.get(), s.c_str(), 10, rnd) != 0 && f.is_nan()) {
        throw domain_error("not a decimal number: " + s);
    }
    return f;
}

std::string Float::to_string(int digits, mpfr_rnd_t rnd) const
{
    if (is_nan()) {
        return "nan";
    }
    if (is_inf()) {
        return mpfr_signbit(v_) ? "-inf" : "inf";
    }
    if (is_zero()) {
        return "0";
    }
    char *raw = nullptr;
    const char rc = rnd == MPFR_RNDU ? 'U' : rnd == MPFR_RNDD ? 'D' : rnd == MPFR_RNDZ ? 'Z' : 'N';
    const std::string fmt = std::string("%.*R") + rc + "e";
    if (mpfr_asprintf(&raw, fmt.c_str(), digits - 1, v_) < 0) {
        throw std::runtime_error("mpfr_asprintf failed");
    }
    std::string s(raw);
    mpfr_free_str(raw);
    return trim_mantissa_zeros(s);
}

mpq_class to_mpq(const Float &f)
{
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), f.get());
    return q;
}

Interval Interval::point(const Rational &q, mpfr_prec_t prec)
{
    return point(q.to_mpq(), prec);
}

Interval Interval::point(const mpq_class &q, mpfr_prec_t prec)
{
    Float lo(prec), hi(prec);
    mpfr_set_q(lo.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi.get(), q.get_mpq_t(), MPFR_RNDU);
    return {std::move(lo), std::move(hi)};
}

Float Interval::width() const
{
    Float w(64);
    mpfr_sub(w.get(), hi.get(), lo.get(), MPFR_RNDU);
    if (w.is_nan()) {
        mpfr_set_inf(w.get(), 1);
    }
    return w;
}

bool Interval::width_at_most(const Float &w) const
{
    return mpfr_lessequal_p(width().get(), w.get()) != 0;
}

bool Interval::contains(const mpq_class &q) const
{
    return mpfr_cmp_q(lo.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi.get(), q.get_mpq_t()) >= 0;
}

bool Interval::contains(const Interval &inner) const
{
    return mpfr_lessequal_p(lo.get(), inner.lo.get()) && mpfr_greaterequal_p(hi.get(), inner.hi.get());
}

bool Interval::overlaps(const Interval &o) const
{
    return mpfr_lessequal_p(lo.get(), o.hi.get()) && mpfr_lessequal_p(o.lo.get(), hi.get());
}

bool Interval::strictly_inside(const mpq_class &a, const mpq_class &b) const
{
    return !lo.is_inf() && !hi.is_inf() && mpfr_cmp_q(lo.get(), a.get_mpq_t()) > 0
           && mpfr_cmp_q(hi.get(), b.get_mpq_t()) < 0;
}

Interval intersect(const Interval &a, const Interval &b)
{
    if (!a.overlaps(b)) {
        throw std::logic_error("intersecting disjoint enclosures of the same value");
    }
    const Float &lo = mpfr_greaterequal_p(a.lo.get(), b.lo.get()) ? a.lo : b.lo;
    const Float &hi = mpfr_lessequal_p(a.hi.get(), b.hi.get()) ? a.hi : b.hi;
    return {lo, hi};
}

Interval iv_log(const Interval &x, mpfr_prec_t prec)
{
    Float lo(prec), hi(prec);
    mpfr_log(lo.get(), x.lo.get(), MPFR_RNDD);
    mpfr_log(hi.get(), x.hi.get(), MPFR_RNDU);
    return {std::move(lo), std::move(hi)};
}

Interval iv_log10(const Interval &x, mpfr_prec_t prec)
{
    Float lo(prec), hi(prec);
    mpfr_log10(lo.get(), x.lo.get(), MPFR_RNDD);
    mpfr_log10(hi.get(), x.hi.get(), MPFR_RNDU);
    return {std::move(lo), std::move(hi)};
}

Interval iv_exp(const Interval &x, mpfr_prec_t prec)
{
    Float lo(prec), hi(prec);
    mpfr_exp(lo.get(), x.lo.get(), MPFR_RNDD);
    mpfr_exp(hi.get(), x.hi.get(), MPFR_RNDU);
    return {std::move(lo), std::move(hi)};
}

Interval iv_exp10(const Interval &x, mpfr_prec_t prec)
{
    Float lo(prec), hi(prec);
    mpfr_exp10(lo.get(), x.lo.get(), MPFR_RNDD);
    mpfr_exp10(hi.get(), x.hi.get(), MPFR_RNDU);
    return {std::move(lo), std::move(hi)};
}

Interval iv_mul(const Interval &a, const Interval &b, mpfr_prec_t prec)
{
    Float lo(prec), hi(prec), t(prec);
    mpfr_set_inf(lo.get(), 1);
    mpfr_set_inf(hi.get(), -1);
    const mpfr_srcptr xs[2] = {a.lo.get(), a.hi.get()};
    const mpfr_srcptr ys[2] = {b.lo.get(), b.hi.get()};
    for (auto x : xs) {
        for (auto y : ys) {
            // 0 * inf is indeterminate; fall back to the whole line on that side.
            mpfr_mul(t.get(), x, y, MPFR_RNDD);
            if (t.is_nan()) {
                mpfr_set_inf(t.get(), -1);
            }
            mpfr_min(lo.get(), lo.get(), t.get(), MPFR_RNDD);
            mpfr_mul(t.get(), x, y, MPFR_RNDU);
            if (t.is_nan()) {
                mpfr_set_inf(t.get(), 1);
            }
            mpfr_max(hi.get(), hi.get(), t.get(), MPFR_RNDU);
        }
    }
    return {std::move(lo), std::move(hi)};
}

MidRad mid_rad(const Interval &x)
{
    if (!x.is_finite()) {
        return {x.hi.is_inf() ? "inf" : "nan", "inf"};
    }
    const mpq_class lo = to_mpq(x.lo);
    const mpq_class hi = to_mpq(x.hi);
    const mpq_class mid = (lo + hi) / 2;
    const int digits = static_cast<int>(std::ceil(static_cast<double>(x.prec()) * 0.30102999566398120)) + 1;

    Float m(x.prec() + 64);
    mpfr_set_q(m.get(), mid.get_mpq_t(), MPFR_RNDN);
    MidRad out;
    out.mid = m.to_string(digits, MPFR_RNDN);

    const mpq_class printed = parse_decimal(out.mid);
    mpq_class r1 = hi - printed;
    mpq_class r2 = printed - lo;
    const mpq_class &r = r1 > r2 ? r1 : r2;
    if (sgn(r) <= 0) {
        out.rad = "0";
        return out;
    }
    Float rf(64);
    mpfr_set_q(rf.get(), r.get_mpq_t(), MPFR_RNDU);
    out.rad = rf.to_string(3, MPFR_RNDU);
    return out;
}

} // namespace ptower
