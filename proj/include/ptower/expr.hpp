#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "ptower/rational.hpp"

namespace ptower
{

/// Enumeration grade: sum of numerator and denominator over every leaf.
/// Folded leaves can carry thousands of digits.
using Weight = mpz_class;

/// Immutable power tower: a leaf rational or a power base^exponent.
///
/// Copies share structure; all operations on an Expr are pure, so values may
/// be passed freely between threads.
class Expr
{
public:
    static Expr leaf(Rational value);
    static Expr leaf(unsigned long num, unsigned long den = 1) { return leaf(Rational(num, den)); }
    static Expr pow(Expr base, Expr exponent);

    bool is_leaf() const;
    bool is_pow() const { return !is_leaf(); }

    // Precondition: is_leaf().
    const Rational &value() const;
    // Precondition: is_pow().
    const Expr &base() const;
    const Expr &exponent() const;

    const Weight &weight() const;
    // Leaves have height 0.
    std::size_t height() const;

    // Same node object (cheap identity test, implies structural equality).
    bool same_node(const Expr &other) const { return node_ == other.node_; }

    friend bool operator==(const Expr &a, const Expr &b);

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    std::shared_ptr<const Node> node_;
};

Expr parse(std::string_view text);

// Fully parenthesised, whitespace free: leaves print as "(m/n)".
std::string serialize(const Expr &e);

inline const Weight &weight(const Expr &e)
{
    return e.weight();
}

// Total order: weight, then leaf before pow, then (num, den) for leaves,
// then (base, exponent) recursively.
std::strong_ordering structural_cmp(const Expr &a, const Expr &b);

struct StructuralLess {
    bool operator()(const Expr &a, const Expr &b) const { return structural_cmp(a, b) < 0; }
};

// Caps for folding p/q ^ k into a single leaf.
inline constexpr unsigned long fold_max_exponent = 64;
inline constexpr std::size_t fold_max_digits = 10000;

// If Pow(Leaf(b), Leaf(e)) folds under the exponent/digit caps, the folded
// leaf value; used by both canonicalize and exact evaluation.
bool foldable_power(const Rational &base, const Rational &exponent);

// True when the root of e is a redex of the rewrite system (children are not
// inspected).
bool is_root_redex(const Expr &e);

/// Bottom-up normal form under: reduced leaves, x^1 -> x, 1^y -> 1 and
/// (p/q)^k -> p^k/q^k for small integer k. Idempotent and value preserving.
Expr canonicalize(const Expr &e);

bool is_canonical(const Expr &e);

} // namespace ptower
