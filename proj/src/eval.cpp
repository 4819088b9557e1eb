#include "ptower/eval.hpp"

#include <cassert>
#include <utility>

#include "ptower/error.hpp"

namespace ptower
{

// ---------------------------------------------------------------------------
// BallValue

BallValue BallValue::exact(Rational q)
{
    BallValue b;
    b.kind_ = BallKind::exact_rational;
    b.exact_ = std::move(q);
    return b;
}

BallValue BallValue::interval(Interval iv)
{
    BallValue b;
    b.kind_ = BallKind::interval;
    b.iv_ = std::move(iv);
    return b;
}

BallValue BallValue::log_interval(Interval iv)
{
    BallValue b;
    b.kind_ = BallKind::log_interval;
    b.iv_ = std::move(iv);
    return b;
}

BallValue BallValue::astronomical(bool huge)
{
    BallValue b;
    b.kind_ = BallKind::astronomical;
    b.huge_ = huge;
    return b;
}

Interval BallValue::enclosure(mpfr_prec_t prec) const
{
    if (is_exact()) {
        return Interval::point(*exact_, prec);
    }
    assert(is_interval());
    return iv_;
}

std::string kind_tag(const BallValue &v)
{
    switch (v.kind()) {
    case BallKind::exact_rational:
        return "exact";
    case BallKind::interval:
        return "interval";
    case BallKind::log_interval:
        return "log10";
    case BallKind::astronomical:
        return v.huge() ? "astronomical+" : "astronomical-";
    }
    return "?";
}

BallText to_text(const BallValue &v, mpfr_prec_t prec)
{
    BallText t;
    t.kind = kind_tag(v);
    if (v.is_astronomical()) {
        t.mid = v.huge() ? "inf" : "0";
        t.rad = "inf";
        return t;
    }
    const MidRad mr = mid_rad(v.is_exact() ? v.enclosure(prec) : v.bounds());
    t.mid = mr.mid;
    t.rad = mr.rad;
    return t;
}

// ---------------------------------------------------------------------------
// Exact folding

namespace
{

std::optional<Rational> exact_rec(const Expr &e)
{
    if (e.is_leaf()) {
        return e.value();
    }
    auto b = exact_rec(e.base());
    if (b && b->is_one()) {
        return b;
    }
    auto x = exact_rec(e.exponent());
    if (x && x->is_one()) {
        return b;
    }
    if (b && x && foldable_power(*b, *x)) {
        return b->pow(x->num().get_ui());
    }
    return std::nullopt;
}

} // namespace

std::optional<Rational> exact_rational(const Expr &e)
{
    return exact_rec(canonicalize(e));
}

// ---------------------------------------------------------------------------
// Magnitude screening

namespace
{

Interval log10_rec(const Expr &e, mpfr_prec_t prec)
{
    if (e.is_leaf()) {
        return iv_log10(Interval::point(e.value(), prec), prec);
    }
    Interval lb = log10_rec(e.base(), prec);
    if (lb.lo.is_zero() && lb.hi.is_zero()) {
        return lb;
    }
    const Interval le = log10_rec(e.exponent(), prec);
    return iv_mul(iv_exp10(le, prec), lb, prec);
}

enum class Screen { huge, tiny, moderate, unknown };

Screen classify(const Interval &l, double cap)
{
    if (mpfr_cmp_d(l.lo.get(), cap) > 0) {
        return Screen::huge;
    }
    if (mpfr_cmp_d(l.hi.get(), -cap) < 0) {
        return Screen::tiny;
    }
    if (mpfr_cmp_d(l.hi.get(), cap) <= 0 && mpfr_cmp_d(l.lo.get(), -cap) >= 0) {
        return Screen::moderate;
    }
    return Screen::unknown;
}

} // namespace

BallValue log_magnitude(const Expr &e, const EvalOptions &opts)
{
    widen_exponent_range();
    Interval l;
    for (mpfr_prec_t prec = 64; prec <= 1024; prec *= 4) {
        l = log10_rec(e, prec);
        switch (classify(l, opts.magnitude_cap_log10)) {
        case Screen::huge:
            return BallValue::astronomical(true);
        case Screen::tiny:
            return BallValue::astronomical(false);
        case Screen::moderate:
            return BallValue::log_interval(std::move(l));
        case Screen::unknown:
            break;
        }
    }
    return BallValue::log_interval(std::move(l));
}

// ---------------------------------------------------------------------------
// Interval evaluation

namespace
{

Interval eval_rec(const Expr &e, mpfr_prec_t prec)
{
    if (e.is_leaf()) {
        return Interval::point(e.value(), prec);
    }
    const Interval b = eval_rec(e.base(), prec);
    const Interval x = eval_rec(e.exponent(), prec);
    return iv_exp(iv_mul(x, iv_log(b, prec), prec), prec);
}

BallValue eval_canonical(const Expr &c, mpfr_prec_t prec, const EvalOptions &opts)
{
    if (c.is_leaf()) {
        return BallValue::exact(c.value());
    }
    BallValue lm = log_magnitude(c, opts);
    if (lm.is_astronomical()) {
        return lm;
    }
    return BallValue::interval(eval_rec(c, prec));
}

} // namespace

Interval log10_enclosure(const Expr &e, mpfr_prec_t prec)
{
    widen_exponent_range();
    return log10_rec(canonicalize(e), prec);
}

BallValue eval_ball(const Expr &e, mpfr_prec_t prec, const EvalOptions &opts)
{
    if (prec < 16) {
        throw domain_error("working precision must be at least 16 bits");
    }
    widen_exponent_range();
    // On canonical trees exact folding succeeds exactly at leaves.
    return eval_canonical(canonicalize(e), prec, opts);
}

Refiner::Refiner(const Expr &e, const EvalOptions &opts, mpfr_prec_t start_prec)
    : expr_(canonicalize(e)), opts_(opts), prec_(start_prec),
      cur_(eval_canonical(expr_, start_prec, opts))
{
    widen_exponent_range();
}

bool Refiner::can_step() const
{
    return cur_.is_interval() && prec_ * 2 <= opts_.precision_cap;
}

bool Refiner::step()
{
    if (!can_step()) {
        return false;
    }
    widen_exponent_range();
    prec_ *= 2;
    Interval next = eval_rec(expr_, prec_);
    cur_ = BallValue::interval(intersect(cur_.bounds(), next));
    return true;
}

BallValue refine(const Expr &e, const Float &target_width, const EvalOptions &opts)
{
    if (mpfr_sgn(target_width.get()) <= 0) {
        throw domain_error("target width must be positive");
    }
    Refiner r(e, opts);
    while (r.current().is_interval() && !r.current().bounds().width_at_most(target_width)) {
        if (!r.step()) {
            throw precision_exhausted("precision cap of " + std::to_string(opts.precision_cap)
                                      + " bits reached before width " + target_width.to_string(6));
        }
    }
    return r.current();
}

Float pow10_float(long exp10)
{
    widen_exponent_range();
    Float f(64);
    mpfr_set_si(f.get(), exp10, MPFR_RNDN);
    Float out(64);
    mpfr_exp10(out.get(), f.get(), MPFR_RNDD);
    return out;
}

// ---------------------------------------------------------------------------
// Digits

DigitString rational_digits(const mpq_class &q, std::size_t k)
{
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, k);
    mpz_class cell = q.get_num() * scale;
    mpz_fdiv_q(cell.get_mpz_t(), cell.get_mpz_t(), q.get_den().get_mpz_t());

    DigitString d;
    mpz_class frac;
    mpz_fdiv_qr(d.integer_part.get_mpz_t(), frac.get_mpz_t(), cell.get_mpz_t(), scale.get_mpz_t());
    std::string s = k == 0 ? std::string() : frac.get_str();
    d.digits = std::string(k - s.size(), '0') + s;
    return d;
}

std::optional<mpz_class> decimal_cell(const Interval &iv, std::size_t k)
{
    if (!iv.is_finite()) {
        return std::nullopt;
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, k);
    auto cell_of = [&](const Float &f) {
        const mpq_class q = to_mpq(f) * scale;
        mpz_class c;
        mpz_fdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
        return c;
    };
    mpz_class a = cell_of(iv.lo);
    if (a != cell_of(iv.hi)) {
        return std::nullopt;
    }
    return a;
}

DigitString digits(const Expr &e, std::size_t k, const EvalOptions &opts)
{
    if (k < 1) {
        throw domain_error("digit count must be at least 1");
    }
    Refiner r(e, opts);
    if (r.current().is_exact()) {
        return rational_digits(r.current().rational().to_mpq(), k);
    }
    if (r.current().is_astronomical()) {
        throw magnitude_error("value is astronomical (|log10| > "
                              + std::to_string(static_cast<long long>(opts.magnitude_cap_log10))
                              + "); digits are not available");
    }
    while (true) {
        if (auto cell = decimal_cell(r.current().bounds(), k)) {
            mpz_class scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), 10, k);
            return rational_digits(mpq_class(*cell, scale), k);
        }
        if (!r.step()) {
            throw ambiguous_digit("enclosure of " + serialize(r.expr()) + " still straddles a decimal cell boundary at "
                                  + std::to_string(r.precision()) + " bits (digit " + std::to_string(k) + ")");
        }
    }
}

} // namespace ptower
