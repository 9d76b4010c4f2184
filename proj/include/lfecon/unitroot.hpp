#pragma once

#include <map>
#include <string>
#include <vector>

#include "lfecon/critical_values.hpp"
#include "lfecon/series.hpp"

namespace lfecon {

enum class UnitRootTest { adf, dfgls, pp };

UnitRootTest unit_root_test_from_string(const std::string& name);
std::string to_string(UnitRootTest t);
std::string to_string(DetCase det);
DetCase det_case_from_string(const std::string& name);

/// What to run. `lags` is the number of augmentation lags for ADF and DF-GLS
/// and the Bartlett bandwidth for the Phillips-Perron corrections.
struct UnitRootSpec {
    UnitRootTest test = UnitRootTest::adf;
    DetCase deterministic = DetCase::constant;
    int lags = 0;
};

struct UnitRootResult {
    std::string test_name;               // e.g. "adf", "pp-zrho"
    DetCase deterministic = DetCase::constant;
    int lags = 0;
    double statistic = 0.0;
    std::map<int, double> critical_values;  // level in percent -> threshold
    std::map<int, bool> reject_at;          // level in percent -> decision
    int nobs = 0;                           // observations in the regression

    bool rejects(int level_percent) const;
};

/// Both Phillips-Perron statistics from one pass over the data; they share
/// the regression and the long-run variance estimate.
struct PhillipsPerronResult {
    UnitRootResult z_rho;
    UnitRootResult z_tau;
};

/// Bartlett bandwidth used when a configuration does not pin one:
/// floor(4 * (n/100)^(2/9)).
int default_pp_bandwidth(int nobs);

UnitRootResult adf_test(const Series& s, const UnitRootSpec& spec);
UnitRootResult dfgls_test(const Series& s, const UnitRootSpec& spec);
PhillipsPerronResult pp_test(const Series& s, const UnitRootSpec& spec);

/// Dispatch on spec.test; PP contributes two entries (z_rho then z_tau).
std::vector<UnitRootResult> run_unit_root(const Series& s, const UnitRootSpec& spec);

}  // namespace lfecon
