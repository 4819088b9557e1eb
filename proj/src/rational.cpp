#include "ptower/rational.hpp"

#include <utility>

#include "ptower/error.hpp"

namespace ptower
{

namespace
{

std::strong_ordering to_ordering(int c)
{
    if (c < 0) {
        return std::strong_ordering::less;
    }
    if (c > 0) {
        return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

} // namespace

Rational::Rational(mpz_class num, mpz_class den)
{
    if (num < 1 || den < 1) {
        throw domain_error("rational components must be natural numbers >= 1, got " + num.get_str() + "/"
                           + den.get_str());
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g != 1) {
        mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
    }
    num_ = std::move(num);
    den_ = std::move(den);
}

mpq_class Rational::to_mpq() const
{
    return mpq_class(num_, den_);
}

Rational Rational::pow(unsigned long k) const
{
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), num_.get_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), den_.get_mpz_t(), k);
    // gcd(n^k, d^k) = 1 whenever gcd(n, d) = 1.
    return Rational(std::move(n), std::move(d), already_reduced{});
}

std::size_t decimal_length(const mpz_class &v)
{
    // sizeinbase is exact or one too large.
    const std::size_t est = mpz_sizeinbase(v.get_mpz_t(), 10);
    if (est <= 1) {
        return 1;
    }
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, est - 1);
    return v < p ? est - 1 : est;
}

std::size_t Rational::decimal_length() const
{
    const auto a = ptower::decimal_length(num_);
    const auto b = ptower::decimal_length(den_);
    return a > b ? a : b;
}

std::string Rational::str() const
{
    return num_.get_str() + "/" + den_.get_str();
}

std::strong_ordering value_cmp(const Rational &a, const Rational &b)
{
    return to_ordering(cmp(a.to_mpq(), b.to_mpq()));
}

std::strong_ordering operator<=>(const Rational &a, const Rational &b)
{
    if (const int c = cmp(a.num_, b.num_); c != 0) {
        return to_ordering(c);
    }
    return to_ordering(cmp(a.den_, b.den_));
}

} // namespace ptower
