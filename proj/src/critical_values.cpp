#include "lfecon/critical_values.hpp"

#include <array>
#include <string>

#include "lfecon/errors.hpp"

namespace lfecon::critical_values {

namespace {

int level_index(int level) {
    switch (level) {
        case 1: return 0;
        case 5: return 1;
        case 10: return 2;
        default: throw ConfigError("unsupported significance level " + std::to_string(level) + "%");
    }
}

// MacKinnon (2010) response-surface coefficients for the Dickey-Fuller t
// distribution: cv = b0 + b1/n + b2/n^2 + b3/n^3, rows 1%/5%/10%.
constexpr double kTauNone[3][4] = {
    {-2.56574, -2.2358, -3.627, 0.0},
    {-1.94100, -0.2686, -3.365, 31.223},
    {-1.61682, 0.2656, -2.714, 25.364},
};
constexpr double kTauConst[3][4] = {
    {-3.43035, -6.5393, -16.786, -79.433},
    {-2.86154, -2.8903, -4.234, -40.040},
    {-2.56677, -1.5384, -2.809, 0.0},
};
constexpr double kTauTrend[3][4] = {
    {-3.95877, -9.0531, -28.428, -134.155},
    {-3.41049, -4.3904, -9.036, -45.374},
    {-3.12705, -2.5856, -3.925, -22.380},
};

// Classical tables for the normalized-bias statistic n*(rho - 1); columns
// 1%/5%/10%, one row per tabulated sample size, linear interpolation between.
constexpr int kRhoSizes[6] = {25, 50, 100, 250, 500, 100000};
constexpr double kRhoNone[6][3] = {
    {-11.9, -7.7, -5.7}, {-12.9, -7.9, -5.8}, {-13.3, -8.0, -5.9},
    {-13.6, -8.1, -5.9}, {-13.7, -8.1, -5.9}, {-13.8, -8.1, -5.9},
};
constexpr double kRhoConst[6][3] = {
    {-17.2, -12.5, -10.2}, {-18.9, -13.3, -10.7}, {-19.8, -13.7, -11.0},
    {-20.3, -14.0, -11.2}, {-20.5, -14.0, -11.2}, {-20.7, -14.1, -11.3},
};
constexpr double kRhoTrend[6][3] = {
    {-22.5, -17.9, -15.6}, {-25.7, -19.8, -16.8}, {-27.4, -20.7, -17.5},
    {-28.4, -21.3, -17.9}, {-28.9, -21.5, -18.1}, {-29.5, -21.8, -18.3},
};

// Elliott-Rothenberg-Stock (1996) Table 1, detrended DF-GLS; columns 1%/5%/10%.
constexpr int kErsSizes[4] = {50, 100, 200, 100000};
constexpr double kErsTrend[4][3] = {
    {-3.77, -3.19, -2.89},
    {-3.58, -3.03, -2.74},
    {-3.46, -2.93, -2.64},
    {-3.48, -2.89, -2.57},
};

double interpolate(const int* sizes, int count, const double (*table)[3], int nobs, int col) {
    if (nobs <= sizes[0]) return table[0][col];
    if (nobs >= sizes[count - 1]) return table[count - 1][col];
    for (int i = 0; i < count - 1; ++i) {
        if (nobs >= sizes[i] && nobs <= sizes[i + 1]) {
            const double w = static_cast<double>(nobs - sizes[i]) /
                             static_cast<double>(sizes[i + 1] - sizes[i]);
            return table[i][col] * (1.0 - w) + table[i + 1][col] * w;
        }
    }
    return table[count - 1][col];
}

// Johansen trace 5% critical values, indexed by p - r (1-based).
constexpr double kJohansenNone[4] = {3.84, 12.53, 24.31, 39.89};
constexpr double kJohansenRConst[4] = {9.42, 19.96, 34.91, 53.12};

}  // namespace

double df_tau(DetCase det, int nobs, int level) {
    if (nobs < 1) throw NumericError("df_tau: sample size must be positive");
    const double(*c)[4] = det == DetCase::none      ? kTauNone
                          : det == DetCase::constant ? kTauConst
                                                     : kTauTrend;
    const int row = level_index(level);
    const double n = nobs;
    return c[row][0] + c[row][1] / n + c[row][2] / (n * n) + c[row][3] / (n * n * n);
}

double df_rho(DetCase det, int nobs, int level) {
    if (nobs < 1) throw NumericError("df_rho: sample size must be positive");
    const double(*table)[3] = det == DetCase::none      ? kRhoNone
                              : det == DetCase::constant ? kRhoConst
                                                         : kRhoTrend;
    return interpolate(kRhoSizes, 6, table, nobs, level_index(level));
}

double dfgls(DetCase det, int nobs, int level) {
    if (det == DetCase::constant_and_trend)
        return interpolate(kErsSizes, 4, kErsTrend, nobs, level_index(level));
    // Demeaned case: same distribution as the no-deterministics DF t.
    return df_tau(DetCase::none, nobs, level);
}

double johansen_trace_5pct(int p_minus_r, bool restricted_constant) {
    if (p_minus_r < 1 || p_minus_r > 4)
        throw ConfigError("johansen_trace_5pct: tables cover 1..4 remaining ranks, got " +
                          std::to_string(p_minus_r));
    return restricted_constant ? kJohansenRConst[p_minus_r - 1] : kJohansenNone[p_minus_r - 1];
}

}  // namespace lfecon::critical_values
