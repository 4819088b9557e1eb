#include "ptower/target.hpp"

#include "ptower/decimal.hpp"
#include "ptower/error.hpp"

namespace ptower
{

Target Target::builtin(TargetId id)
{
    if (id == TargetId::custom) {
        throw domain_error("custom targets need a digit string");
    }
    return Target(id);
}

Target Target::custom(const std::string &digits, const std::string &radius)
{
    Target t(TargetId::custom);
    t.text_ = digits;
    t.center_ = parse_decimal(digits);
    t.radius_ = parse_decimal(radius);
    if (sgn(t.center_) <= 0) {
        throw domain_error("target value must be positive: " + digits);
    }
    if (sgn(t.radius_) < 0) {
        throw domain_error("target radius must be nonnegative: " + radius);
    }
    t.min_width_ = 2 * t.radius_;
    return t;
}

Target Target::from_string(const std::string &s, const std::string &radius)
{
    if (s == "e") {
        return builtin(TargetId::e);
    }
    if (s == "pi") {
        return builtin(TargetId::pi);
    }
    if (s == "ln2") {
        return builtin(TargetId::ln2);
    }
    if (s == "sqrt2") {
        return builtin(TargetId::sqrt2);
    }
    if (s == "2pow-sqrt2" || s == "two_pow_sqrt2") {
        return builtin(TargetId::two_pow_sqrt2);
    }
    return custom(s, radius);
}

std::string Target::name() const
{
    switch (id_) {
    case TargetId::e:
        return "e";
    case TargetId::pi:
        return "pi";
    case TargetId::ln2:
        return "ln2";
    case TargetId::sqrt2:
        return "sqrt2";
    case TargetId::two_pow_sqrt2:
        return "2pow-sqrt2";
    case TargetId::custom:
        return text_;
    }
    return "?";
}

Interval Target::enclosure(mpfr_prec_t prec) const
{
    widen_exponent_range();
    Float lo(prec), hi(prec);
    switch (id_) {
    case TargetId::e: {
        Float one(prec);
        mpfr_set_ui(one.get(), 1, MPFR_RNDN);
        mpfr_exp(lo.get(), one.get(), MPFR_RNDD);
        mpfr_exp(hi.get(), one.get(), MPFR_RNDU);
        break;
    }
    case TargetId::pi:
        mpfr_const_pi(lo.get(), MPFR_RNDD);
        mpfr_const_pi(hi.get(), MPFR_RNDU);
        break;
    case TargetId::ln2:
        mpfr_const_log2(lo.get(), MPFR_RNDD);
        mpfr_const_log2(hi.get(), MPFR_RNDU);
        break;
    case TargetId::sqrt2:
        mpfr_sqrt_ui(lo.get(), 2, MPFR_RNDD);
        mpfr_sqrt_ui(hi.get(), 2, MPFR_RNDU);
        break;
    case TargetId::two_pow_sqrt2: {
        const mpfr_prec_t wp = prec + 16;
        Interval root = Target(TargetId::sqrt2).enclosure(wp);
        Interval ln2 = Target(TargetId::ln2).enclosure(wp);
        Interval r = iv_exp(iv_mul(root, ln2, wp), wp);
        mpfr_set(lo.get(), r.lo.get(), MPFR_RNDD);
        mpfr_set(hi.get(), r.hi.get(), MPFR_RNDU);
        break;
    }
    case TargetId::custom: {
        const mpq_class a = center_ - radius_;
        const mpq_class b = center_ + radius_;
        mpfr_set_q(lo.get(), a.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(hi.get(), b.get_mpq_t(), MPFR_RNDU);
        break;
    }
    }
    return {std::move(lo), std::move(hi)};
}

} // namespace ptower
