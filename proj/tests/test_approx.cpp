#include "doctest.h"

#include "oracle.hpp"
#include "ptower/approx.hpp"
#include "ptower/enumerate.hpp"
#include "ptower/error.hpp"

using namespace ptower;

namespace
{

oracle::Dec target_value(TargetId id)
{
    using oracle::Dec;
    switch (id) {
    case TargetId::e:
        return exp(Dec(1));
    case TargetId::pi:
        return boost::math::constants::pi<Dec>();
    case TargetId::ln2:
        return log(Dec(2));
    case TargetId::sqrt2:
        return sqrt(Dec(2));
    case TargetId::two_pow_sqrt2:
        return pow(Dec(2), sqrt(Dec(2)));
    default:
        return Dec(0);
    }
}

void check_sandwich(const ApproxRecord &r, const oracle::Dec &target)
{
    const oracle::Dec err = abs(oracle::value(r.best_expr) - target);
    CHECK(mpfr_lessequal_p(r.error_lower_bound.get(), r.error_upper_bound.get()));
    CHECK(oracle::to_dec(r.error_lower_bound, MPFR_RNDD) <= err);
    CHECK(err <= oracle::to_dec(r.error_upper_bound, MPFR_RNDU));
}

} // namespace

TEST_CASE("targets enclose their constants")
{
    for (TargetId id : {TargetId::e, TargetId::pi, TargetId::ln2, TargetId::sqrt2, TargetId::two_pow_sqrt2}) {
        const Target t = Target::builtin(id);
        for (mpfr_prec_t p : {64, 256, 1024}) {
            CHECK(oracle::inside(t.enclosure(p), target_value(id)));
        }
    }
    CHECK(Target::from_string("2pow-sqrt2").id() == TargetId::two_pow_sqrt2);
    const Target c = Target::custom("3.25", "0.01");
    CHECK(c.enclosure(64).contains(mpq_class(13, 4) + mpq_class(1, 100)));
    CHECK_FALSE(c.enclosure(64).contains(mpq_class(13, 4) + mpq_class(2, 100)));
    CHECK_THROWS_AS(Target::custom("3.25", "-1"), domain_error);
    CHECK_THROWS_AS(Target::from_string("tau"), domain_error);
}

TEST_CASE("shape predicates")
{
    CHECK(matches_shape(parse("(2/1)^((2/1)^(1/2))"), ShapeFilter::simple));
    CHECK_FALSE(matches_shape(parse("((2/1)^(1/2))^(2/1)"), ShapeFilter::simple));
    CHECK(matches_shape(parse("((2/1)^(1/2))^((3/1)^(1/2))"), ShapeFilter::double_pow));
    CHECK_FALSE(matches_shape(parse("(2/1)^((2/1)^(1/2))"), ShapeFilter::double_pow));
    CHECK(matches_shape(parse("(((2/1)^(1/2))^((3/1)^(1/2)))^(((5/1)^(1/2))^((7/1)^(1/2)))"), ShapeFilter::atomic));
    CHECK(matches_shape(parse("(2/1)^((2/1)^(1/2))"), ShapeFilter::atomic));
    CHECK_FALSE(matches_shape(parse("(2/1)^((2/1)^((2/1)^((2/1)^(1/2))))"), ShapeFilter::atomic));
    CHECK(matches_shape(parse("(3/7)"), ShapeFilter::full));
    CHECK(parse_shape("double") == ShapeFilter::double_pow);
    CHECK_THROWS_AS(parse_shape("round"), domain_error);
}

TEST_CASE("approximate examples")
{
    const ApproxRecord hit = approximate(Target::builtin(TargetId::two_pow_sqrt2), 9, ShapeFilter::simple);
    CHECK(serialize(hit.best_expr) == "(2/1)^((2/1)^(1/2))");
    CHECK(hit.indistinguishable);
    CHECK(hit.error_lower_bound.is_zero());
    CHECK(mpfr_lessequal_p(hit.error_upper_bound.get(), pow10_float(-256).get()));

    // Every SIMPLE candidate of weight <= 9 is separated from e.
    const Target e = Target::builtin(TargetId::e);
    const ApproxRecord se = approximate(e, 9, ShapeFilter::simple);
    CHECK_FALSE(se.indistinguishable);
    CHECK(se.error_lower_bound.is_zero() == false);
    check_sandwich(se, target_value(TargetId::e));
    for (unsigned long w = 2; w <= 9; ++w) {
        for (const Expr &x : generate_weight_class(w)) {
            if (matches_shape(x, ShapeFilter::simple)) {
                const ErrorBounds b = certify_error(x, e, pow10_float(-256), {});
                CHECK(mpfr_sgn(b.lower.get()) > 0);
                CHECK(abs(oracle::value(x) - target_value(TargetId::e)) > oracle::Dec("1e-60"));
            }
        }
    }

    const ApproxRecord s5 = approximate(Target::builtin(TargetId::sqrt2), 5, ShapeFilter::full);
    CHECK(serialize(s5.best_expr) == "(3/2)");
    CHECK_FALSE(s5.indistinguishable);
    const ApproxRecord s6 = approximate(Target::builtin(TargetId::sqrt2), 6, ShapeFilter::full);
    CHECK(serialize(s6.best_expr) == "(2/1)^(1/2)");
    CHECK(s6.indistinguishable);
    CHECK(s6.error_lower_bound.is_zero());

    CHECK_THROWS_AS(approximate(e, 5, ShapeFilter::simple), no_candidate);
    CHECK_THROWS_AS(approximate(e, 8, ShapeFilter::simple), no_candidate);
    CHECK_NOTHROW(approximate(e, 9, ShapeFilter::simple));
}

TEST_CASE("approximate picks the oracle minimiser")
{
    const Target pi = Target::builtin(TargetId::pi);
    const oracle::Dec truth = target_value(TargetId::pi);
    const ApproxRecord r = approximate(pi, 10, ShapeFilter::full);
    check_sandwich(r, truth);
    oracle::Dec best = -1;
    std::string best_text;
    for (unsigned long w = 2; w <= 10; ++w) {
        for (const Expr &x : generate_weight_class(w)) {
            const oracle::Dec err = abs(oracle::value(x) - truth);
            // Equal values (such as 3 and (3^(1/2))^2) tie; the first wins.
            if (best < 0 || err < best - oracle::Dec("1e-100")) {
                best = err;
                best_text = serialize(x);
            }
        }
    }
    CHECK(serialize(r.best_expr) == best_text);
}

TEST_CASE("convergence_table examples")
{
    const Target e = Target::builtin(TargetId::e);
    const auto rows = convergence_table(e, {6, 8, 10, 12}, ShapeFilter::full);
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        check_sandwich(rows[i], target_value(TargetId::e));
        CHECK(matches_shape(rows[i].best_expr, ShapeFilter::full));
        if (i > 0) {
            CHECK(mpfr_lessequal_p(rows[i].error_upper_bound.get(), rows[i - 1].error_upper_bound.get()));
        }
    }
    CHECK(mpfr_less_p(rows[3].error_upper_bound.get(), rows[0].error_upper_bound.get()));

    const auto pi2 = convergence_table(Target::builtin(TargetId::pi), {2}, ShapeFilter::full);
    REQUIRE(pi2.size() == 1);
    CHECK(serialize(pi2[0].best_expr) == "(1/1)");
    check_sandwich(pi2[0], target_value(TargetId::pi));
    CHECK(pi2[0].error_lower_bound.to_string(5) == "2.1416e+00");

    const auto t = convergence_table(Target::builtin(TargetId::two_pow_sqrt2), {9, 10}, ShapeFilter::full);
    CHECK(t[0].indistinguishable);
    CHECK(t[1].indistinguishable);

    CHECK_THROWS_AS(convergence_table(e, {8, 6}, ShapeFilter::full), domain_error);

    const auto simple = convergence_table(e, {9, 10, 11}, ShapeFilter::simple);
    for (const auto &r : simple) {
        CHECK(matches_shape(r.best_expr, ShapeFilter::simple));
    }
}

TEST_CASE("custom target")
{
    const ApproxRecord r = approximate(Target::custom("2.6651441426902251886502972498731"), 10, ShapeFilter::full);
    CHECK(serialize(r.best_expr) == "(2/1)^((2/1)^(1/2))");
    CHECK_FALSE(r.indistinguishable);
    const ApproxRecord wide = approximate(Target::custom("2.665", "0.001"), 10, ShapeFilter::full);
    CHECK(serialize(wide.best_expr) == "(2/1)^((2/1)^(1/2))");
    CHECK(wide.indistinguishable);
}

TEST_CASE("certify_errors kernels agree")
{
    std::vector<Expr> xs;
    for (unsigned long w = 2; w <= 9; ++w) {
        for (const Expr &x : generate_weight_class(w)) {
            xs.push_back(x);
        }
    }
    const Target ln2 = Target::builtin(TargetId::ln2);
    const auto a = certify_errors(xs, ln2, pow10_float(-256), {}, 4);
    const auto b = certify_errors_serial(xs, ln2, pow10_float(-256), {});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(mpfr_equal_p(a[i].lower.get(), b[i].lower.get()));
        CHECK(mpfr_equal_p(a[i].upper.get(), b[i].upper.get()));
        CHECK(a[i].precision == b[i].precision);
    }
}
