#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lfecon/errors.hpp"
#include "lfecon/period.hpp"

using namespace lfecon;

TEST_CASE("annual periods parse and render") {
    const Period p = parse_period("1971");
    CHECK(p.year == 1971);
    CHECK_FALSE(p.is_quarterly());
    CHECK(p.str() == "1971");
}

TEST_CASE("quarterly periods parse both cases and render canonically") {
    const Period p = parse_period("1975Q1");
    CHECK(p.year == 1975);
    REQUIRE(p.quarter.has_value());
    CHECK(*p.quarter == 1);
    CHECK(p.str() == "1975Q1");
    CHECK(parse_period("1975q4").str() == "1975Q4");
}

TEST_CASE("malformed periods are rejected") {
    CHECK_THROWS_AS(parse_period(""), DataError);
    CHECK_THROWS_AS(parse_period("197"), DataError);
    CHECK_THROWS_AS(parse_period("abcd"), DataError);
    CHECK_THROWS_AS(parse_period("1975Q0"), DataError);
    CHECK_THROWS_AS(parse_period("1975Q5"), DataError);
    CHECK_THROWS_AS(parse_period("1975Q"), DataError);
    CHECK_THROWS_AS(parse_period("1975X2"), DataError);
    CHECK_THROWS_AS(parse_period("1975 "), DataError);
}

TEST_CASE("annual arithmetic") {
    const Period p = parse_period("2000");
    CHECK(add_periods(p, 5).str() == "2005");
    CHECK(add_periods(p, -3).str() == "1997");
    CHECK(periods_between(parse_period("1990"), parse_period("2000")) == 10);
    CHECK(periods_between(parse_period("2000"), parse_period("1990")) == -10);
}

TEST_CASE("quarterly arithmetic wraps across years") {
    const Period p = parse_period("1999Q4");
    CHECK(add_periods(p, 1).str() == "2000Q1");
    CHECK(add_periods(p, 5).str() == "2001Q1");
    CHECK(add_periods(p, -4).str() == "1998Q4");
    CHECK(add_periods(p, -7).str() == "1998Q1");
    CHECK(periods_between(parse_period("1975Q1"), parse_period("1976Q3")) == 6);
}

TEST_CASE("ordering") {
    CHECK(period_less(parse_period("1990"), parse_period("1991")));
    CHECK_FALSE(period_less(parse_period("1991"), parse_period("1991")));
    CHECK(period_less(parse_period("1990Q3"), parse_period("1990Q4")));
    CHECK(period_less(parse_period("1989Q4"), parse_period("1990Q1")));
}

TEST_CASE("annual and quarterly periods never compare") {
    CHECK_THROWS_AS(period_less(parse_period("1990"), parse_period("1990Q1")), DataError);
    CHECK_THROWS_AS(periods_between(parse_period("1990"), parse_period("1990Q1")), DataError);
}

TEST_CASE("frequency names round-trip") {
    CHECK(to_string(Frequency::annual) == "annual");
    CHECK(to_string(Frequency::quarterly) == "quarterly");
    CHECK(frequency_from_string("annual") == Frequency::annual);
    CHECK(frequency_from_string("quarterly") == Frequency::quarterly);
    CHECK_THROWS_AS(frequency_from_string("monthly"), ConfigError);
}
