#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "lfecon/cointegration.hpp"
#include "lfecon/errors.hpp"
#include "lfecon/series.hpp"
#include "support/random.hpp"

using namespace lfecon;

namespace {

Series annual(const std::vector<double>& v, const std::string& id) {
    return make_series(id, Frequency::annual, Period{1950, std::nullopt}, v);
}

// Two random walks tied together by one long-run relation:
//   w is a pure random walk, a = w + noise, b = 0.5 w + noise.
std::vector<Series> rank_one_system(std::uint64_t seed, int n) {
    testsupport::Gaussian g(seed);
    std::vector<double> w(n), a(n), b(n);
    double state = 0.0;
    for (int t = 0; t < n; ++t) {
        state += g();
        w[t] = state;
        a[t] = state + 0.3 * g();
        b[t] = 0.5 * state + 0.3 * g();
    }
    return {annual(a, "a"), annual(b, "b")};
}

std::vector<Series> independent_walks(std::uint64_t seed, int n) {
    return {annual(testsupport::random_walk(seed, n), "a"),
            annual(testsupport::random_walk(seed + 77, n), "b")};
}

}  // namespace

TEST_CASE("residual battery has the documented shape") {
    auto u = testsupport::white_noise(321, 60, 0.01);
    EngleGrangerReport rep = engle_granger(annual(u, "resid"), 4);
    // ADF, DF-GLS at lags 1..4, then the two Phillips-Perron statistics.
    REQUIRE(rep.residual_tests.size() == 7);
    CHECK(rep.residual_tests[0].test_name == "adf");
    CHECK(rep.residual_tests[0].lags == 0);
    CHECK(rep.residual_tests[0].deterministic == DetCase::constant);
    for (int i = 1; i <= 4; ++i) {
        CHECK(rep.residual_tests[static_cast<std::size_t>(i)].test_name == "dfgls");
        CHECK(rep.residual_tests[static_cast<std::size_t>(i)].lags == i);
        CHECK(rep.residual_tests[static_cast<std::size_t>(i)].deterministic ==
              DetCase::constant_and_trend);
    }
    CHECK(rep.residual_tests[5].test_name == "pp-zrho");
    CHECK(rep.residual_tests[6].test_name == "pp-ztau");

    // The headline decision is exactly ADF & both PP forms at 1%.
    bool expected = rep.residual_tests[0].rejects(1) && rep.residual_tests[5].rejects(1) &&
                    rep.residual_tests[6].rejects(1);
    CHECK(rep.cointegrated_at_1pct == expected);
}

TEST_CASE("white-noise residuals are identified as stationary nearly always") {
    int hits = 0;
    const int trials = 200;
    for (int trial = 0; trial < trials; ++trial) {
        auto u = testsupport::white_noise(
            testsupport::trial_seed(40441, static_cast<std::uint64_t>(trial)), 44, 0.01);
        if (engle_granger(annual(u, "resid"), 4).cointegrated_at_1pct) ++hits;
    }
    CHECK(static_cast<double>(hits) / trials > 0.95);
}

TEST_CASE("a random-walk residual is not called cointegrated") {
    int hits = 0;
    const int trials = 200;
    for (int trial = 0; trial < trials; ++trial) {
        auto u = testsupport::random_walk(
            testsupport::trial_seed(50661, static_cast<std::uint64_t>(trial)), 44, 0.01);
        if (engle_granger(annual(u, "resid"), 4).cointegrated_at_1pct) ++hits;
    }
    CHECK(static_cast<double>(hits) / trials < 0.05);
}

TEST_CASE("a degenerate residual is an error, not a detection") {
    std::vector<double> zeros(40, 0.0);
    CHECK_THROWS_AS(engle_granger(annual(zeros, "resid"), 4), NumericError);
    std::vector<double> tiny(10, 0.001);
    CHECK_THROWS_AS(engle_granger(annual(tiny, "resid"), 4), DataError);
    auto u = testsupport::white_noise(1, 40);
    CHECK_THROWS_AS(engle_granger(annual(u, "resid"), 0), ConfigError);
}

TEST_CASE("johansen finds rank one in a tied pair of walks") {
    for (auto trend : {JohansenTrend::none, JohansenTrend::rconstant}) {
        auto ys = rank_one_system(2024, 200);
        JohansenReport rep = johansen(ys, 2, trend);
        REQUIRE(rep.rows.size() == 3);
        CHECK(rep.selected_rank == 1);
        CHECK(rep.rows[0].rank == 0);
        CHECK(std::isnan(rep.rows[0].eigenvalue));
        CHECK(std::isnan(rep.rows[2].trace_stat));
        CHECK(std::isnan(rep.rows[2].critical_5pct));
        // Eigenvalues come sorted, largest first, all in [0, 1).
        CHECK(rep.rows[1].eigenvalue >= rep.rows[2].eigenvalue);
        CHECK(rep.rows[1].eigenvalue < 1.0);
        CHECK(rep.rows[2].eigenvalue >= 0.0);
    }
}

TEST_CASE("johansen finds rank zero for independent walks") {
    int rank_zero = 0;
    const int trials = 40;
    for (int trial = 0; trial < trials; ++trial) {
        auto ys = independent_walks(
            testsupport::trial_seed(60100, static_cast<std::uint64_t>(trial)), 200);
        if (johansen(ys, 2, JohansenTrend::none).selected_rank == 0) ++rank_zero;
    }
    CHECK(static_cast<double>(rank_zero) / trials > 0.85);
}

TEST_CASE("trace statistics tie out against the log likelihoods") {
    auto ys = rank_one_system(77, 150);
    for (auto trend : {JohansenTrend::none, JohansenTrend::rconstant}) {
        JohansenReport rep = johansen(ys, 2, trend);
        const int p = 2;
        double ll_full = rep.rows[static_cast<std::size_t>(p)].log_likelihood;
        for (int r = 0; r < p; ++r) {
            double expect = 2.0 * (ll_full - rep.rows[static_cast<std::size_t>(r)].log_likelihood);
            CHECK(rep.rows[static_cast<std::size_t>(r)].trace_stat ==
                  doctest::Approx(expect).epsilon(1e-9));
        }
        // And against the eigenvalue form: trace_r = -N * sum_{i>r} ln(1 - l_i).
        double tail = 0.0;
        for (int i = p; i >= 1; --i) {
            tail -= std::log1p(-rep.rows[static_cast<std::size_t>(i)].eigenvalue);
            double expect = rep.nobs * tail;
            CHECK(rep.rows[static_cast<std::size_t>(i - 1)].trace_stat ==
                  doctest::Approx(expect).epsilon(1e-9));
        }
        // Log likelihood rises with rank.
        CHECK(rep.rows[0].log_likelihood <= rep.rows[1].log_likelihood);
        CHECK(rep.rows[1].log_likelihood <= rep.rows[2].log_likelihood);
    }
}

TEST_CASE("johansen is invariant to series order and scaling") {
    auto ys = rank_one_system(909, 180);
    JohansenReport base = johansen(ys, 2, JohansenTrend::none);

    std::vector<Series> swapped{ys[1], ys[0]};
    JohansenReport sw = johansen(swapped, 2, JohansenTrend::none);
    for (std::size_t i = 0; i < base.rows.size(); ++i) {
        if (!std::isnan(base.rows[i].trace_stat))
            CHECK(sw.rows[i].trace_stat ==
                  doctest::Approx(base.rows[i].trace_stat).epsilon(1e-9));
    }

    std::vector<double> scaled_vals;
    for (const auto& v : ys[0].values()) scaled_vals.push_back(*v * 1000.0);
    std::vector<Series> scaled{annual(scaled_vals, "a_scaled"), ys[1]};
    JohansenReport sc = johansen(scaled, 2, JohansenTrend::none);
    for (std::size_t i = 0; i < base.rows.size(); ++i) {
        if (!std::isnan(base.rows[i].trace_stat))
            CHECK(sc.rows[i].trace_stat ==
                  doctest::Approx(base.rows[i].trace_stat).epsilon(1e-8));
    }
}

TEST_CASE("selected rank is the first non-rejected row") {
    auto ys = rank_one_system(4242, 160);
    JohansenReport rep = johansen(ys, 2, JohansenTrend::none);
    int expected = 2;
    for (int r = 0; r < 2; ++r) {
        if (rep.rows[static_cast<std::size_t>(r)].trace_stat <
            rep.rows[static_cast<std::size_t>(r)].critical_5pct) {
            expected = r;
            break;
        }
    }
    CHECK(rep.selected_rank == expected);
}

TEST_CASE("johansen rejects bad inputs") {
    auto ys = rank_one_system(5, 30);
    CHECK_THROWS_AS(johansen({ys[0]}, 2, JohansenTrend::none), ConfigError);
    CHECK_THROWS_AS(johansen(ys, 0, JohansenTrend::none), ConfigError);

    // Duplicated series make the moment matrices singular.
    std::vector<Series> dup{ys[0], ys[0]};
    CHECK_THROWS_AS(johansen(dup, 2, JohansenTrend::none), NumericError);

    // Too short for the lag order.
    auto shorty = rank_one_system(6, 11);
    CHECK_THROWS_AS(johansen(shorty, 2, JohansenTrend::none), DataError);

    // Mismatched frequencies.
    Series q = make_series("q", Frequency::quarterly, Period{1950, 1},
                           std::vector<double>(30, 1.0));
    CHECK_THROWS_AS(johansen({ys[0], q}, 2, JohansenTrend::none), DataError);
}

TEST_CASE("johansen with one lag uses no difference regressors") {
    auto ys = rank_one_system(31337, 120);
    JohansenReport rep = johansen(ys, 1, JohansenTrend::none);
    CHECK(rep.max_lag == 1);
    CHECK(rep.nobs == 119);
    CHECK(rep.rows.size() == 3);
    CHECK(rep.selected_rank >= 0);
}

TEST_CASE("trend spec strings round trip") {
    CHECK(johansen_trend_from_string("none") == JohansenTrend::none);
    CHECK(johansen_trend_from_string("rconstant") == JohansenTrend::rconstant);
    CHECK(to_string(JohansenTrend::rconstant) == "rconstant");
    CHECK_THROWS_AS(johansen_trend_from_string("drift"), ConfigError);
}
