#pragma once

#include <compare>
#include <cstddef>
#include <string>

#include <gmpxx.h>

namespace ptower
{

/// Exact positive fraction m/n with m, n >= 1, always held in lowest terms.
class Rational
{
public:
    Rational() : num_(1), den_(1) {}
    // Throws domain_error when either component is < 1.
    Rational(mpz_class num, mpz_class den);
    explicit Rational(unsigned long n) : Rational(mpz_class(n), mpz_class(1)) {}
    Rational(unsigned long n, unsigned long d) : Rational(mpz_class(n), mpz_class(d)) {}

    const mpz_class &num() const { return num_; }
    const mpz_class &den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_one() const { return num_ == 1 && den_ == 1; }

    mpq_class to_mpq() const;

    // Exact k-th power; the result stays in lowest terms.
    Rational pow(unsigned long k) const;

    // Number of decimal digits of the larger component.
    std::size_t decimal_length() const;

    // "m/n" without parentheses.
    std::string str() const;

    // Value comparison.
    friend std::strong_ordering value_cmp(const Rational &a, const Rational &b);

    // Structural comparison: numerator first, then denominator.
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b);
    friend bool operator==(const Rational &a, const Rational &b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    struct already_reduced {};
    Rational(mpz_class num, mpz_class den, already_reduced) : num_(std::move(num)), den_(std::move(den)) {}

    mpz_class num_;
    mpz_class den_;
};

// Exact decimal digit count of a positive integer.
std::size_t decimal_length(const mpz_class &v);

} // namespace ptower
