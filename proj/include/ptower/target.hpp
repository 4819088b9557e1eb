#pragma once

#include <optional>
#include <string>

#include <gmpxx.h>

#include "ptower/interval.hpp"

namespace ptower
{

enum class TargetId { e, pi, ln2, sqrt2, two_pow_sqrt2, custom };

/// A constant to approximate. Built-in constants are enclosed to any
/// precision on demand; custom targets are an exact decimal plus a radius.
class Target
{
public:
    static Target builtin(TargetId id);
    // `digits` is a decimal literal, `radius` a nonnegative decimal literal.
    static Target custom(const std::string &digits, const std::string &radius = "0");

    // Accepts e, pi, ln2, sqrt2, 2pow-sqrt2 / two_pow_sqrt2, or a decimal literal.
    static Target from_string(const std::string &s, const std::string &radius = "0");

    TargetId id() const { return id_; }
    std::string name() const;

    // Outward rounded enclosure at the given working precision.
    Interval enclosure(mpfr_prec_t prec) const;

    // Width below which the enclosure cannot shrink (2 * radius).
    const mpq_class &min_width() const { return min_width_; }

private:
    explicit Target(TargetId id) : id_(id) {}

    TargetId id_;
    std::string text_;
    mpq_class center_;
    mpq_class radius_;
    mpq_class min_width_;
};

} // namespace ptower
