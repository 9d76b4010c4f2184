#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "lfecon/errors.hpp"
#include "lfecon/forecast.hpp"
#include "lfecon/series.hpp"

using namespace lfecon;

namespace {

Period y(int year) { return Period{year, std::nullopt}; }

PiecewiseLagModel cpi_model() {
    PiecewiseLagModel m;
    m.driver_id = "lf";
    m.response_id = "cpi";
    m.transform = DriverTransform::growth_rate;
    m.segments = {{y(1992), y(2009), 1, 0.5, 0.006}};
    m.open_ended = true;
    return m;
}

PiecewiseLagModel ue_model() {
    PiecewiseLagModel m;
    m.driver_id = "lf";
    m.response_id = "ue";
    m.transform = DriverTransform::growth_rate;
    m.segments = {{y(1992), y(2009), 0, -0.5, 0.04}};
    m.open_ended = true;
    return m;
}

Series lf_path(double annual_growth, int first = 2008, int last = 2051) {
    std::vector<double> v;
    double level = 4.5;
    for (int year = first; year <= last; ++year) {
        v.push_back(level);
        level *= 1.0 + annual_growth;
    }
    return make_series("lf", Frequency::annual, y(first), v);
}

}  // namespace

TEST_CASE("a flat labour force maps to the intercepts exactly") {
    ForecastScenario s{"flat", lf_path(0.0)};
    ForecastResult r = project(cpi_model(), ue_model(), s, y(2010), y(2050));

    CHECK(r.scenario == "flat");
    CHECK(r.inflation_path.id() == "cpi.forecast.flat");
    CHECK(r.unemployment_path.id() == "ue.forecast.flat");
    CHECK(r.inflation_model_id == "cpi");
    CHECK(r.unemployment_model_id == "ue");
    CHECK(r.inflation_path.start() == y(2010));
    CHECK(r.inflation_path.end_period() == y(2050));
    for (std::size_t i = 0; i < r.inflation_path.size(); ++i) {
        // Zero growth annihilates the slope term, leaving the intercept.
        CHECK(*r.inflation_path.value(i) == 0.006);
        CHECK(*r.unemployment_path.value(i) == 0.04);
    }
}

TEST_CASE("constant growth maps to constant responses") {
    ForecastScenario s{"steady", lf_path(0.004)};
    ForecastResult r = project(cpi_model(), ue_model(), s, y(2010), y(2050));
    for (std::size_t i = 0; i < r.inflation_path.size(); ++i) {
        CHECK(*r.inflation_path.value(i) == doctest::Approx(0.5 * 0.004 + 0.006).epsilon(1e-9));
        CHECK(*r.unemployment_path.value(i) == doctest::Approx(-0.5 * 0.004 + 0.04).epsilon(1e-9));
    }
}

TEST_CASE("a faster-growing labour force raises inflation and lowers unemployment") {
    ForecastScenario hi{"high", lf_path(0.004)};
    ForecastScenario lo{"low", lf_path(-0.003)};
    ForecastResult rh = project(cpi_model(), ue_model(), hi, y(2010), y(2050));
    ForecastResult rl = project(cpi_model(), ue_model(), lo, y(2010), y(2050));
    for (std::size_t i = 0; i < rh.inflation_path.size(); ++i) {
        CHECK(*rh.inflation_path.value(i) > *rl.inflation_path.value(i));
        CHECK(*rh.unemployment_path.value(i) < *rl.unemployment_path.value(i));
    }
}

TEST_CASE("projection is deterministic") {
    ForecastScenario s{"steady", lf_path(0.002)};
    ForecastResult a = project(cpi_model(), ue_model(), s, y(2010), y(2050));
    ForecastResult b = project(cpi_model(), ue_model(), s, y(2010), y(2050));
    for (std::size_t i = 0; i < a.inflation_path.size(); ++i) {
        CHECK(*a.inflation_path.value(i) == *b.inflation_path.value(i));
        CHECK(*a.unemployment_path.value(i) == *b.unemployment_path.value(i));
    }
}

TEST_CASE("a scenario that starts too late is rejected by name") {
    // cpi needs growth at t-1, so the path must start by 2008 to serve 2010.
    ForecastScenario s{"late", lf_path(0.002, 2010, 2050)};
    CHECK_THROWS_WITH_AS(project(cpi_model(), ue_model(), s, y(2010), y(2050)),
                         doctest::Contains("does not cover the years"), DataError);
    // A path that stops early fails as well; the inflation law reads the
    // growth rate at t-1, so the last year it misses is 2049.
    ForecastScenario shorty{"short", lf_path(0.002, 2008, 2040)};
    CHECK_THROWS_WITH_AS(project(cpi_model(), ue_model(), shorty, y(2010), y(2050)),
                         doctest::Contains("2049"), DataError);
}

TEST_CASE("invalid scenarios and models are rejected") {
    Series zero_path = make_series("lf", Frequency::annual, y(2008),
                                   std::vector<double>{4.5, 4.5, 0.0, 4.5});
    CHECK_THROWS_WITH_AS(project(cpi_model(), ue_model(), {"zero", zero_path}, y(2010), y(2011)),
                         doctest::Contains("non-positive"), DataError);

    Series quarterly = make_series("lf", Frequency::quarterly, Period{2008, 1},
                                   std::vector<double>(20, 4.5));
    CHECK_THROWS_AS(project(cpi_model(), ue_model(), {"q", quarterly}, y(2010), y(2011)),
                    DataError);

    PiecewiseLagModel closed = cpi_model();
    closed.open_ended = false;
    CHECK_THROWS_AS(project(closed, ue_model(), {"flat", lf_path(0.0)}, y(2010), y(2050)),
                    ConfigError);

    CHECK_THROWS_AS(project(cpi_model(), ue_model(), {"flat", lf_path(0.0)}, y(2050), y(2010)),
                    ConfigError);
}

TEST_CASE("only the final segment's law drives the projection") {
    PiecewiseLagModel m = cpi_model();
    m.segments.insert(m.segments.begin(), Segment{y(1980), y(1991), 1, 9.9, 0.09});
    ForecastScenario s{"flat", lf_path(0.0)};
    ForecastResult r = project(m, ue_model(), s, y(2010), y(2050));
    for (std::size_t i = 0; i < r.inflation_path.size(); ++i)
        CHECK(*r.inflation_path.value(i) == 0.006);  // early segment ignored
}
