#include "lfecon/runner.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <variant>

#include <json.hpp>

#include "lfecon/catalog.hpp"
#include "lfecon/cointegration.hpp"
#include "lfecon/csv_io.hpp"
#include "lfecon/errors.hpp"
#include "lfecon/evaluate.hpp"
#include "lfecon/forecast.hpp"
#include "lfecon/hash.hpp"
#include "lfecon/lagmodel.hpp"
#include "lfecon/model_io.hpp"
#include "lfecon/unitroot.hpp"

namespace lfecon {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(std::string("cannot open ") + what + " '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct Context {
    json cfg;
    std::string preamble;  // "# lfecon v1 command=... config=... seed=..."
    DataCatalog catalog;
    std::filesystem::path out;

    // Calibration outputs, addressable from later jobs as "<name>.predicted"
    // and "<name>.residual".
    std::map<std::string, Series> derived;
    std::map<std::string, CalibrationResult> piecewise;
    std::map<std::string, GeneralizedCalibrationResult> generalized;

    bool calibrated = false;
};

// ---- config helpers -------------------------------------------------------

[[noreturn]] void bad_config(const std::string& message) { throw ConfigError(message); }

const json& require(const json& node, const char* key, const std::string& where) {
    auto it = node.find(key);
    if (it == node.end()) bad_config(where + ": missing field '" + key + "'");
    return *it;
}

std::string require_string(const json& node, const char* key, const std::string& where) {
    const json& v = require(node, key, where);
    if (!v.is_string()) bad_config(where + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

int require_int(const json& node, const char* key, const std::string& where) {
    const json& v = require(node, key, where);
    if (!v.is_number_integer()) bad_config(where + ": field '" + key + "' must be an integer");
    return v.get<int>();
}

Period require_period(const json& node, const char* key, const std::string& where) {
    return parse_period(require_string(node, key, where));
}

GridSpec parse_grid(const json& node, const char* key, const GridSpec& fallback,
                    const std::string& where) {
    auto it = node.find(key);
    if (it == node.end()) return fallback;
    const std::string w = where + "." + key;
    GridSpec g;
    g.min = require(*it, "min", w).get<double>();
    g.max = require(*it, "max", w).get<double>();
    g.step = require(*it, "step", w).get<double>();
    return g;
}

// ---- series resolution ----------------------------------------------------

Series resolve_series(Context& ctx, const std::string& ref) {
    auto it = ctx.derived.find(ref);
    if (it != ctx.derived.end()) return it->second;
    if (ctx.catalog.has(ref)) return ctx.catalog.load_series(ref);
    bad_config("series reference '" + ref +
               "' is neither a catalog id nor a calibration output");
}

Series apply_ur_transform(const Series& s, const std::string& name) {
    if (name == "level") return s;
    if (name == "diff") return diff(s);
    if (name == "growth") return growth_rate(s);
    if (name == "growth_diff") return diff(growth_rate(s));
    bad_config("unknown series transform '" + name +
               "' (expected level, diff, growth, or growth_diff)");
}

// ---- output helpers -------------------------------------------------------

void write_output(const Context& ctx, const std::string& filename, const std::string& body) {
    std::filesystem::create_directories(ctx.out);
    const auto path = ctx.out / filename;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    out << ctx.preamble << body;
    if (!out) throw DataError("write failed for '" + path.string() + "'");
}

std::string csv_double(double v) { return format_double(v); }

std::string csv_opt(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

// ---- urtest ---------------------------------------------------------------

void append_result_rows(std::string& csv, std::string& txt, const std::string& job,
                        const std::string& series, const std::string& transform,
                        const UnitRootResult& r) {
    csv += job + ',' + series + ',' + transform + ',' + r.test_name + ',' +
           to_string(r.deterministic) + ',' + std::to_string(r.lags) + ',' +
           std::to_string(r.nobs) + ',' + csv_double(r.statistic);
    for (int level : {1, 5, 10}) csv += ',' + csv_double(r.critical_values.at(level));
    for (int level : {1, 5, 10}) csv += ',' + std::string(r.rejects(level) ? "1" : "0");
    csv += '\n';

    char line[160];
    std::snprintf(line, sizeof line, "  %-10s lags=%-3d n=%-4d  %10.4f%s  (1%%: %.4f)\n",
                  r.test_name.c_str(), r.lags, r.nobs, r.statistic,
                  r.rejects(1) ? "*" : " ", r.critical_values.at(1));
    txt += line;
}

void cmd_urtest(Context& ctx) {
    const auto it = ctx.cfg.find("unit_root");
    if (it == ctx.cfg.end() || !it->is_array() || it->empty())
        bad_config("config has no unit_root jobs");

    std::string csv =
        "job,series,transform,test,deterministic,lags,nobs,statistic,"
        "cv_1pct,cv_5pct,cv_10pct,reject_1pct,reject_5pct,reject_10pct\n";
    std::string txt;

    for (const json& job : *it) {
        const std::string name = require_string(job, "name", "unit_root job");
        const std::string where = "unit_root job '" + name + "'";
        const std::string id = require_string(job, "series", where);
        const std::string transform = job.value("transform", "level");
        const Series s = apply_ur_transform(resolve_series(ctx, id), transform);

        UnitRootSpec spec;
        spec.test = unit_root_test_from_string(require_string(job, "test", where));
        spec.deterministic = det_case_from_string(job.value("deterministic", "constant"));
        if (job.contains("lags")) {
            spec.lags = require_int(job, "lags", where);
        } else if (spec.test == UnitRootTest::pp) {
            spec.lags = default_pp_bandwidth(static_cast<int>(contiguous_observed(s).size()));
        } else {
            spec.lags = s.frequency() == Frequency::quarterly ? 4 : 2;
        }

        txt += name + "  (" + id + ", " + transform + ", " +
               to_string(spec.deterministic) + ")\n";
        for (const UnitRootResult& r : run_unit_root(s, spec))
            append_result_rows(csv, txt, name, id, transform, r);
        txt += '\n';
    }
    write_output(ctx, "urtest.csv", csv);
    write_output(ctx, "urtest.txt", txt);
}

// ---- calibrate ------------------------------------------------------------

CalibrationConfig parse_calibration_config(const json& job, const std::string& where) {
    CalibrationConfig cfg;
    if (job.contains("breakpoints"))
        for (const json& bp : job.at("breakpoints")) cfg.breakpoints.push_back(parse_period(bp.get<std::string>()));
    cfg.transform = driver_transform_from_string(job.value("transform", "growth_rate"));
    cfg.lag_min = job.value("lag_min", -1);
    cfg.lag_max = job.value("lag_max", 3);
    cfg.slope = parse_grid(job, "slope", cfg.slope, where);
    cfg.intercept = parse_grid(job, "intercept", cfg.intercept, where);
    cfg.slope_ue = parse_grid(job, "slope_ue", cfg.slope, where);
    cfg.refine = job.value("refine", true);
    cfg.objective = objective_from_string(job.value("objective", "cumulative_rms"));
    if (job.contains("overrides")) {
        for (const json& ov : job.at("overrides")) {
            SegmentOverride o;
            const int index = require_int(ov, "segment", where + " override");
            if (ov.contains("lag")) o.lag = ov.at("lag").get<int>();
            if (ov.contains("slope")) o.slope = ov.at("slope").get<double>();
            if (ov.contains("intercept")) o.intercept = ov.at("intercept").get<double>();
            if (ov.contains("lag_ue")) o.lag_ue = ov.at("lag_ue").get<int>();
            if (ov.contains("slope_ue")) o.slope_ue = ov.at("slope_ue").get<double>();
            cfg.overrides[index] = o;
        }
    }
    return cfg;
}

void run_calibrations(Context& ctx) {
    if (ctx.calibrated) return;
    ctx.calibrated = true;
    const auto it = ctx.cfg.find("calibrations");
    if (it == ctx.cfg.end()) return;

    for (const json& job : *it) {
        const std::string name = require_string(job, "name", "calibration job");
        const std::string where = "calibration '" + name + "'";
        const std::string kind = job.value("kind", "piecewise");
        const CalibrationConfig cfg = parse_calibration_config(job, where);
        const Series response = resolve_series(ctx, require_string(job, "response", where));

        if (kind == "piecewise") {
            const Series driver = resolve_series(ctx, require_string(job, "driver", where));
            CalibrationResult result = calibrate(driver, response, cfg);
            ctx.derived.emplace(name + ".predicted", result.predicted);
            ctx.derived.emplace(name + ".residual", result.residual);
            ctx.piecewise.emplace(name, std::move(result));
        } else if (kind == "generalized") {
            const Series lf = resolve_series(ctx, require_string(job, "lf", where));
            const Series ue = resolve_series(ctx, require_string(job, "ue", where));
            GeneralizedCalibrationResult result = calibrate_generalized(lf, ue, response, cfg);
            ctx.derived.emplace(name + ".predicted", result.predicted);
            ctx.derived.emplace(name + ".residual", result.residual);
            ctx.generalized.emplace(name, std::move(result));
        } else {
            bad_config(where + ": unknown kind '" + kind + "'");
        }
    }
}

void append_segment_diag(std::string& csv, const std::string& name,
                         const SegmentDiagnostics& d, const std::string& start,
                         const std::string& end, int lag, std::optional<int> lag_ue,
                         double slope, std::optional<double> slope_ue, double intercept) {
    csv += name + ',' + std::to_string(d.segment_index) + ',' + start + ',' + end + ',' +
           std::to_string(lag) + ',' + (lag_ue ? std::to_string(*lag_ue) : std::string()) +
           ',' + csv_double(slope) + ',' + (slope_ue ? csv_double(*slope_ue) : std::string()) +
           ',' + csv_double(intercept) + ',' + std::to_string(d.n_points) + ',' +
           csv_double(d.objective) + ',' + csv_double(d.cumulative_rms) + ',' +
           csv_double(d.annual_rms) + '\n';
}

void cmd_calibrate(Context& ctx) {
    run_calibrations(ctx);
    if (ctx.piecewise.empty() && ctx.generalized.empty())
        bad_config("config has no calibration jobs");

    std::string csv =
        "job,segment,start,end,lag,lag_ue,slope,slope_ue,intercept,"
        "n_points,objective,cumulative_rms,annual_rms\n";
    std::string txt;

    for (const auto& [name, result] : ctx.piecewise) {
        txt += name + " (driver " + result.model.driver_id + " -> response " +
               result.model.response_id + ", " + to_string(result.model.transform) + ")\n";
        for (std::size_t i = 0; i < result.model.segments.size(); ++i) {
            const Segment& s = result.model.segments[i];
            const SegmentDiagnostics& d = result.segments[i];
            append_segment_diag(csv, name, d, s.start.str(), s.end.str(), s.lag,
                                std::nullopt, s.slope, std::nullopt, s.intercept);
            char line[200];
            std::snprintf(line, sizeof line,
                          "  %s..%s  lag=%d  slope=%.6g  intercept=%.6g  obj=%.6g\n",
                          s.start.str().c_str(), s.end.str().c_str(), s.lag, s.slope,
                          s.intercept, d.objective);
            txt += line;
        }
        txt += '\n';
        save_model(ctx.out / (name + ".model"), AnyModel(result.model));
        write_series_csv(ctx.out / (name + ".predicted.csv"), result.predicted);
        write_series_csv(ctx.out / (name + ".residual.csv"), result.residual);
    }
    for (const auto& [name, result] : ctx.generalized) {
        txt += name + " (drivers " + result.model.lf_id + " + " + result.model.ue_id +
               " -> response " + result.model.response_id + ")\n";
        for (std::size_t i = 0; i < result.model.segments.size(); ++i) {
            const GeneralizedSegment& s = result.model.segments[i];
            const SegmentDiagnostics& d = result.segments[i];
            append_segment_diag(csv, name, d, s.start.str(), s.end.str(), s.lag_lf, s.lag_ue,
                                s.slope_lf, s.slope_ue, s.intercept);
            char line[220];
            std::snprintf(line, sizeof line,
                          "  %s..%s  lag_lf=%d lag_ue=%d  slope_lf=%.6g slope_ue=%.6g  "
                          "intercept=%.6g  obj=%.6g\n",
                          s.start.str().c_str(), s.end.str().c_str(), s.lag_lf, s.lag_ue,
                          s.slope_lf, s.slope_ue, s.intercept, d.objective);
            txt += line;
        }
        txt += '\n';
        save_model(ctx.out / (name + ".model"), AnyModel(result.model));
        write_series_csv(ctx.out / (name + ".predicted.csv"), result.predicted);
        write_series_csv(ctx.out / (name + ".residual.csv"), result.residual);
    }
    std::filesystem::create_directories(ctx.out);
    write_output(ctx, "calibrate.csv", csv);
    write_output(ctx, "calibrate.txt", txt);
}

// ---- coint ----------------------------------------------------------------

void cmd_coint(Context& ctx) {
    const auto it = ctx.cfg.find("cointegration");
    if (it == ctx.cfg.end() || !it->is_array() || it->empty())
        bad_config("config has no cointegration jobs");
    run_calibrations(ctx);

    std::string eg_csv =
        "job,test,deterministic,lags,nobs,statistic,cv_1pct,reject_1pct,"
        "cointegrated_at_1pct\n";
    std::string jo_csv =
        "job,trend,max_lag,nobs,rank,log_likelihood,eigenvalue,trace_stat,"
        "critical_5pct,selected_rank\n";
    std::string txt;

    for (const json& job : *it) {
        const std::string name = require_string(job, "name", "cointegration job");
        const std::string where = "cointegration job '" + name + "'";
        const std::string kind = require_string(job, "kind", where);

        if (kind == "engle_granger") {
            const std::string ref = require_string(job, "residual_of", where);
            const Series residual = resolve_series(ctx, ref + ".residual");
            const int max_lag = job.value("dfgls_max_lag", 4);
            const EngleGrangerReport report = engle_granger(residual, max_lag);

            txt += name + " (residual of " + ref + ")\n";
            for (const UnitRootResult& r : report.residual_tests) {
                eg_csv += name + ',' + r.test_name + ',' + to_string(r.deterministic) + ',' +
                          std::to_string(r.lags) + ',' + std::to_string(r.nobs) + ',' +
                          csv_double(r.statistic) + ',' + csv_double(r.critical_values.at(1)) +
                          ',' + (r.rejects(1) ? "1" : "0") + ',' +
                          (report.cointegrated_at_1pct ? "1" : "0") + '\n';
                char line[160];
                std::snprintf(line, sizeof line, "  %-10s lags=%-3d %10.4f%s  (1%%: %.4f)\n",
                              r.test_name.c_str(), r.lags, r.statistic,
                              r.rejects(1) ? "*" : " ", r.critical_values.at(1));
                txt += line;
            }
            txt += std::string("  cointegrated at 1%: ") +
                   (report.cointegrated_at_1pct ? "yes" : "no") + "\n\n";
        } else if (kind == "johansen") {
            const json& refs = require(job, "series", where);
            if (!refs.is_array() || refs.size() < 2)
                bad_config(where + ": 'series' must list at least two ids");
            std::vector<Series> ys;
            for (const json& ref : refs) {
                // Each entry is either a bare id or {"id":..., "transform":...}.
                if (ref.is_string()) {
                    ys.push_back(resolve_series(ctx, ref.get<std::string>()));
                } else {
                    const std::string id = require_string(ref, "id", where);
                    ys.push_back(apply_ur_transform(resolve_series(ctx, id),
                                                    ref.value("transform", "level")));
                }
            }
            const int max_lag = job.value("max_lag", 2);

            std::vector<std::string> trends;
            const auto tr = job.find("trend");
            if (tr == job.end()) trends = {"none", "rconstant"};
            else if (tr->is_string()) trends = {tr->get<std::string>()};
            else for (const json& t : *tr) trends.push_back(t.get<std::string>());

            for (const std::string& trend_name : trends) {
                const JohansenReport report =
                    johansen(ys, max_lag, johansen_trend_from_string(trend_name));
                txt += name + " trend=" + trend_name + " maxlag=" +
                       std::to_string(max_lag) + "\n";
                txt += "  rank        LL  eigenvalue  trace   5% critical\n";
                for (const JohansenRankRow& row : report.rows) {
                    jo_csv += name + ',' + trend_name + ',' + std::to_string(max_lag) + ',' +
                              std::to_string(report.nobs) + ',' + std::to_string(row.rank) +
                              ',' + csv_double(row.log_likelihood) + ',' +
                              (std::isnan(row.eigenvalue) ? std::string()
                                                          : csv_double(row.eigenvalue)) +
                              ',' +
                              (std::isnan(row.trace_stat) ? std::string()
                                                          : csv_double(row.trace_stat)) +
                              ',' +
                              (std::isnan(row.critical_5pct) ? std::string()
                                                             : csv_double(row.critical_5pct)) +
                              ',' + std::to_string(report.selected_rank) + '\n';
                    char line[160];
                    if (std::isnan(row.trace_stat))
                        std::snprintf(line, sizeof line, "  %4d  %8.2f  %10.4f\n", row.rank,
                                      row.log_likelihood,
                                      std::isnan(row.eigenvalue) ? 0.0 : row.eigenvalue);
                    else if (std::isnan(row.eigenvalue))
                        std::snprintf(line, sizeof line, "  %4d  %8.2f           .  %6.2f%s  %6.2f\n",
                                      row.rank, row.log_likelihood, row.trace_stat,
                                      row.rank == report.selected_rank ? "*" : " ",
                                      row.critical_5pct);
                    else
                        std::snprintf(line, sizeof line, "  %4d  %8.2f  %10.4f  %6.2f%s  %6.2f\n",
                                      row.rank, row.log_likelihood, row.eigenvalue,
                                      row.trace_stat,
                                      row.rank == report.selected_rank ? "*" : " ",
                                      row.critical_5pct);
                    txt += line;
                }
                txt += "  selected rank: " + std::to_string(report.selected_rank) + "\n";
                if (!report.notes.empty()) txt += "  note: " + report.notes + "\n";
                txt += '\n';
            }
        } else {
            bad_config(where + ": unknown kind '" + kind + "'");
        }
    }
    write_output(ctx, "coint_residual.csv", eg_csv);
    write_output(ctx, "coint_rank.csv", jo_csv);
    write_output(ctx, "coint.txt", txt);
}

// ---- evaluate ---------------------------------------------------------------

EvaluationReport run_evaluation(Context& ctx, const json& job, const std::string& where,
                                std::string& observed_id, std::string& pred_ref,
                                std::string& preset) {
    observed_id = require_string(job, "observed", where);
    pred_ref = require_string(job, "predicted_of", where);
    preset = job.value("preset", "raw");
    const Series obs = resolve_series(ctx, observed_id);
    const Series pred = resolve_series(ctx, pred_ref + ".predicted");
    if (preset == "raw") return evaluate_model(obs, pred);
    if (preset == "ma3") return evaluate_smoothed_ma3(obs, pred);
    bad_config(where + ": unknown preset '" + preset + "' (expected raw or ma3)");
}

void cmd_evaluate(Context& ctx) {
    const auto it = ctx.cfg.find("evaluations");
    if (it == ctx.cfg.end() || !it->is_array() || it->empty())
        bad_config("config has no evaluation jobs");
    run_calibrations(ctx);

    std::string csv =
        "job,observed,predicted_of,preset,span_start,span_end,r2_annual,"
        "r2_cumulative,rmsfe,naive_rmsfe,final_relative_error\n";
    std::string txt;
    for (const json& job : *it) {
        const std::string name = require_string(job, "name", "evaluation job");
        const std::string where = "evaluation '" + name + "'";
        std::string observed_id, pred_ref, preset;
        const EvaluationReport r = run_evaluation(ctx, job, where, observed_id, pred_ref, preset);

        const auto& rel = r.relative_error;
        std::optional<double> final_rel;
        for (std::size_t i = rel.size(); i-- > 0;)
            if (rel.value(i)) {
                final_rel = rel.value(i);
                break;
            }

        csv += name + ',' + observed_id + ',' + pred_ref + ',' + preset + ',' +
               r.span_start.str() + ',' + r.span_end.str() + ',' + csv_double(r.r2_annual) +
               ',' + csv_double(r.r2_cumulative) + ',' + csv_double(r.rmsfe_value) + ',' +
               csv_double(r.naive_rmsfe_value) + ',' + csv_opt(final_rel) + '\n';

        char line[320];
        std::snprintf(line, sizeof line,
                      "%s (%s vs %s, %s) %s..%s\n"
                      "  R2 annual     %8.4f\n  R2 cumulative %8.4f\n"
                      "  RMSFE         %8.4f\n  naive RMSFE   %8.4f\n",
                      name.c_str(), observed_id.c_str(), pred_ref.c_str(), preset.c_str(),
                      r.span_start.str().c_str(), r.span_end.str().c_str(), r.r2_annual,
                      r.r2_cumulative, r.rmsfe_value, r.naive_rmsfe_value);
        txt += line;
        txt += '\n';
    }
    write_output(ctx, "evaluate.csv", csv);
    write_output(ctx, "evaluate.txt", txt);
}

// ---- forecast ---------------------------------------------------------------

const PiecewiseLagModel& piecewise_model(Context& ctx, const std::string& name,
                                         const std::string& where) {
    auto it = ctx.piecewise.find(name);
    if (it == ctx.piecewise.end())
        bad_config(where + ": '" + name + "' is not a piecewise calibration job");
    return it->second.model;
}

std::vector<ForecastResult> run_forecasts(Context& ctx) {
    const auto it = ctx.cfg.find("forecast");
    if (it == ctx.cfg.end()) bad_config("config has no forecast block");
    run_calibrations(ctx);
    const std::string where = "forecast";
    const json& block = *it;

    const PiecewiseLagModel& cpi =
        piecewise_model(ctx, require_string(block, "inflation_model", where), where);
    const PiecewiseLagModel& ue =
        piecewise_model(ctx, require_string(block, "unemployment_model", where), where);
    const Period first = require_period(block, "first", where);
    const Period last = require_period(block, "last", where);

    std::vector<ForecastResult> results;
    for (const json& ref : require(block, "scenarios", where)) {
        const std::string id = ref.get<std::string>();
        ForecastScenario scenario{id, resolve_series(ctx, id)};
        results.push_back(project(cpi, ue, scenario, first, last));
    }
    if (results.empty()) bad_config("forecast: no scenarios listed");
    return results;
}

void cmd_forecast(Context& ctx) {
    const auto results = run_forecasts(ctx);
    std::string csv = "scenario,period,inflation,unemployment\n";
    std::string txt;
    for (const ForecastResult& r : results) {
        txt += r.scenario + " (inflation: " + r.inflation_model_id +
               ", unemployment: " + r.unemployment_model_id + ")\n";
        for (std::size_t i = 0; i < r.inflation_path.size(); ++i) {
            csv += r.scenario + ',' + r.inflation_path.period(i).str() + ',' +
                   csv_opt(r.inflation_path.value(i)) + ',' +
                   csv_opt(r.unemployment_path.value(i)) + '\n';
        }
        const auto last = r.inflation_path.size() - 1;
        char line[200];
        std::snprintf(line, sizeof line,
                      "  %s: inflation %.4f .. %s: inflation %.4f, unemployment %.4f\n",
                      r.inflation_path.period(0).str().c_str(),
                      r.inflation_path.value(0).value_or(0.0),
                      r.inflation_path.period(last).str().c_str(),
                      r.inflation_path.value(last).value_or(0.0),
                      r.unemployment_path.value(last).value_or(0.0));
        txt += line;
    }
    write_output(ctx, "forecast.csv", csv);
    write_output(ctx, "forecast.txt", txt);
}

// ---- plotdata ---------------------------------------------------------------

void cmd_plotdata(Context& ctx) {
    run_calibrations(ctx);
    if (ctx.piecewise.empty() && ctx.generalized.empty())
        bad_config("plotdata needs at least one calibration job");

    std::string annual = "model,period,observed,predicted\n";
    std::string cumulative_csv = "model,period,observed_cumulative,predicted_cumulative\n";
    std::string smoothed = "model,period,observed,predicted_ma3\n";
    std::string relative = "model,period,error,relative_error\n";

    auto emit = [&](const std::string& name, const std::string& response_id,
                    const Series& predicted, const Series& residual) {
        const Series obs = resolve_series(ctx, response_id);
        const auto pairs = align(obs, predicted);
        const Period base = pairs.front().period;
        const Period end = pairs.back().period;

        for (const auto& p : pairs)
            annual += name + ',' + p.period.str() + ',' + csv_double(p.a) + ',' +
                      csv_double(p.b) + '\n';

        double co = 0.0, cp = 0.0;
        for (const auto& p : pairs) {
            co += p.a;
            cp += p.b;
            cumulative_csv += name + ',' + p.period.str() + ',' + csv_double(co) + ',' +
                              csv_double(cp) + '\n';
        }

        const Series ma = moving_average(predicted, 3);
        for (const auto& p : align(obs, ma))
            smoothed += name + ',' + p.period.str() + ',' + csv_double(p.a) + ',' +
                        csv_double(p.b) + '\n';

        const Series rel = relative_cumulative_error(obs, predicted, base);
        for (std::size_t i = 0; i < rel.size(); ++i) {
            const Period period = rel.period(i);
            if (period_less(end, period)) break;
            relative += name + ',' + period.str() + ',' + csv_opt(residual.at(period)) + ',' +
                        csv_opt(rel.value(i)) + '\n';
        }
    };

    for (const auto& [name, result] : ctx.piecewise)
        emit(name, result.model.response_id, result.predicted, result.residual);
    for (const auto& [name, result] : ctx.generalized)
        emit(name, result.model.response_id, result.predicted, result.residual);

    write_output(ctx, "plot_annual.csv", annual);
    write_output(ctx, "plot_cumulative.csv", cumulative_csv);
    write_output(ctx, "plot_smoothed.csv", smoothed);
    write_output(ctx, "plot_relative_error.csv", relative);

    if (ctx.cfg.contains("forecast")) {
        const auto results = run_forecasts(ctx);
        std::string fan = "scenario,period,inflation,unemployment\n";
        for (const ForecastResult& r : results)
            for (std::size_t i = 0; i < r.inflation_path.size(); ++i)
                fan += r.scenario + ',' + r.inflation_path.period(i).str() + ',' +
                       csv_opt(r.inflation_path.value(i)) + ',' +
                       csv_opt(r.unemployment_path.value(i)) + '\n';
        write_output(ctx, "plot_forecast.csv", fan);
    }
}

}  // namespace

const std::vector<std::string>& known_commands() {
    static const std::vector<std::string> commands{
        "urtest", "coint", "calibrate", "evaluate", "forecast", "plotdata", "all"};
    return commands;
}

void run_command(const std::string& command, const RunOptions& options) {
    const std::string config_bytes = read_file(options.config_path, "config");
    json cfg;
    try {
        cfg = json::parse(config_bytes);
    } catch (const json::exception& e) {
        throw ConfigError("config '" + options.config_path.string() + "': " + e.what());
    }
    if (!cfg.is_object()) throw ConfigError("config root must be an object");
    if (cfg.value("version", 0) != 1)
        throw ConfigError("config version must be 1");

    std::filesystem::path catalog_path(require_string(cfg, "catalog", "config"));
    if (catalog_path.is_relative())
        catalog_path = options.config_path.parent_path() / catalog_path;

    std::uint64_t seed = cfg.value("seed", 0ULL);
    if (options.seed) seed = *options.seed;

    Context ctx{std::move(cfg),
                "",
                DataCatalog::load(catalog_path),
                options.out_dir.empty() ? std::filesystem::path(".") : options.out_dir};
    for (const auto& [id, file] : options.series_overrides)
        ctx.catalog.override_file(id, file);

    ctx.preamble = "# lfecon v1 command=" + command + " config=" + fnv1a64_hex(config_bytes) +
                   " seed=" + std::to_string(seed) + "\n";

    if (command == "urtest") {
        cmd_urtest(ctx);
    } else if (command == "calibrate") {
        cmd_calibrate(ctx);
    } else if (command == "coint") {
        cmd_coint(ctx);
    } else if (command == "evaluate") {
        cmd_evaluate(ctx);
    } else if (command == "forecast") {
        cmd_forecast(ctx);
    } else if (command == "plotdata") {
        cmd_plotdata(ctx);
    } else if (command == "all") {
        cmd_urtest(ctx);
        cmd_calibrate(ctx);
        cmd_coint(ctx);
        cmd_evaluate(ctx);
        cmd_forecast(ctx);
        cmd_plotdata(ctx);
    } else {
        throw ConfigError("unknown command '" + command + "'");
    }
}

}  // namespace lfecon
