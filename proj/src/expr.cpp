#include "ptower/expr.hpp"

#include <cassert>
#include <cctype>
#include <cmath>
#include <utility>
#include <variant>

#include "ptower/error.hpp"

namespace ptower
{

struct Expr::Node {
    struct PowChildren {
        Expr base;
        Expr exponent;
    };

    std::variant<Rational, PowChildren> data;
    Weight weight;
    std::size_t height;
};

Expr Expr::leaf(Rational value)
{
    Weight w = value.num() + value.den();
    return Expr(std::make_shared<const Node>(Node{std::move(value), std::move(w), 0}));
}

Expr Expr::pow(Expr base, Expr exponent)
{
    Weight w = base.weight() + exponent.weight();
    const std::size_t h = 1 + std::max(base.height(), exponent.height());
    return Expr(std::make_shared<const Node>(
        Node{Node::PowChildren{std::move(base), std::move(exponent)}, std::move(w), h}));
}

bool Expr::is_leaf() const
{
    return std::holds_alternative<Rational>(node_->data);
}

const Rational &Expr::value() const
{
    assert(is_leaf());
    return std::get<Rational>(node_->data);
}

const Expr &Expr::base() const
{
    assert(is_pow());
    return std::get<Node::PowChildren>(node_->data).base;
}

const Expr &Expr::exponent() const
{
    assert(is_pow());
    return std::get<Node::PowChildren>(node_->data).exponent;
}

const Weight &Expr::weight() const
{
    return node_->weight;
}

std::size_t Expr::height() const
{
    return node_->height;
}

bool operator==(const Expr &a, const Expr &b)
{
    if (a.same_node(b)) {
        return true;
    }
    if (a.is_leaf() != b.is_leaf() || a.weight() != b.weight()) {
        return false;
    }
    if (a.is_leaf()) {
        return a.value() == b.value();
    }
    return a.base() == b.base() && a.exponent() == b.exponent();
}

// ---------------------------------------------------------------------------
// Text format

namespace
{

class Parser
{
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr parse_all()
    {
        Expr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) {
            throw syntax_error("unexpected trailing character '" + std::string(1, text_[pos_]) + "'", pos_);
        }
        return e;
    }

private:
    // Expr ::= Atom | Atom "^" Expr
    Expr parse_expr()
    {
        Expr base = parse_atom();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            Expr exponent = parse_expr();
            return Expr::pow(std::move(base), std::move(exponent));
        }
        return base;
    }

    // Atom ::= Nat | Nat "/" Nat | "(" Expr ")"
    Expr parse_atom()
    {
        skip_ws();
        if (peek() == '(') {
            ++pos_;
            Expr inner = parse_expr();
            skip_ws();
            if (peek() != ')') {
                throw syntax_error("expected ')'", pos_);
            }
            ++pos_;
            return inner;
        }
        mpz_class num = parse_nat();
        mpz_class den(1);
        skip_ws();
        if (peek() == '/') {
            ++pos_;
            skip_ws();
            den = parse_nat();
        }
        return Expr::leaf(Rational(std::move(num), std::move(den)));
    }

    mpz_class parse_nat()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            if (pos_ == text_.size()) {
                throw syntax_error("unexpected end of input, expected a natural number", pos_);
            }
            throw syntax_error("expected a natural number, found '" + std::string(1, text_[pos_]) + "'", pos_);
        }
        return mpz_class(std::string(text_.substr(start, pos_ - start)), 10);
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

void write_operand(const Expr &e, std::string &out);

void write_expr(const Expr &e, std::string &out)
{
    if (e.is_leaf()) {
        out += '(';
        out += e.value().str();
        out += ')';
        return;
    }
    write_operand(e.base(), out);
    out += '^';
    write_operand(e.exponent(), out);
}

void write_operand(const Expr &e, std::string &out)
{
    if (e.is_leaf()) {
        write_expr(e, out);
        return;
    }
    out += '(';
    write_expr(e, out);
    out += ')';
}

} // namespace

Expr parse(std::string_view text)
{
    return Parser(text).parse_all();
}

std::string serialize(const Expr &e)
{
    std::string out;
    write_expr(e, out);
    return out;
}

// ---------------------------------------------------------------------------
// Ordering

std::strong_ordering structural_cmp(const Expr &a, const Expr &b)
{
    if (a.same_node(b)) {
        return std::strong_ordering::equal;
    }
    if (const int c = cmp(a.weight(), b.weight()); c != 0) {
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (a.is_leaf() != b.is_leaf()) {
        return a.is_leaf() ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (a.is_leaf()) {
        return a.value() <=> b.value();
    }
    if (const auto c = structural_cmp(a.base(), b.base()); c != 0) {
        return c;
    }
    return structural_cmp(a.exponent(), b.exponent());
}

// ---------------------------------------------------------------------------
// Canonical form

bool foldable_power(const Rational &base, const Rational &exponent)
{
    if (!exponent.is_integer() || exponent.num() > fold_max_exponent) {
        return false;
    }
    const unsigned long k = exponent.num().get_ui();
    // Cheap magnitude bound before the exact digit count.
    const double est = static_cast<double>(k)
                       * static_cast<double>(std::max(mpz_sizeinbase(base.num().get_mpz_t(), 10),
                                                      mpz_sizeinbase(base.den().get_mpz_t(), 10)));
    if (est > static_cast<double>(fold_max_digits) + 2.0 * static_cast<double>(k)) {
        return false;
    }
    return base.pow(k).decimal_length() <= fold_max_digits;
}

bool is_root_redex(const Expr &e)
{
    if (e.is_leaf()) {
        return false;
    }
    const Expr &b = e.base();
    const Expr &x = e.exponent();
    if (x.is_leaf() && x.value().is_one()) {
        return true;
    }
    if (b.is_leaf() && b.value().is_one()) {
        return true;
    }
    return b.is_leaf() && x.is_leaf() && foldable_power(b.value(), x.value());
}

Expr canonicalize(const Expr &e)
{
    // Leaves are reduced on construction.
    if (e.is_leaf()) {
        return e;
    }
    Expr b = canonicalize(e.base());
    Expr x = canonicalize(e.exponent());
    if (x.is_leaf() && x.value().is_one()) {
        return b;
    }
    if (b.is_leaf() && b.value().is_one()) {
        return b;
    }
    if (b.is_leaf() && x.is_leaf() && foldable_power(b.value(), x.value())) {
        return Expr::leaf(b.value().pow(x.value().num().get_ui()));
    }
    if (b.same_node(e.base()) && x.same_node(e.exponent())) {
        return e;
    }
    return Expr::pow(std::move(b), std::move(x));
}

bool is_canonical(const Expr &e)
{
    if (e.is_leaf()) {
        return true;
    }
    return !is_root_redex(e) && is_canonical(e.base()) && is_canonical(e.exponent());
}

} // namespace ptower
