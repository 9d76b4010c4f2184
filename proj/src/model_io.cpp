#include "lfecon/model_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "lfecon/csv_io.hpp"
#include "lfecon/errors.hpp"

namespace lfecon {

namespace {

constexpr const char* kHeader = "lfecon-model v1";

[[noreturn]] void fail(const std::string& where, int line, const std::string& message) {
    throw DataError(where + ":" + std::to_string(line) + ": " + message);
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

double parse_double(const std::string& s, const std::string& where, int line) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        fail(where, line, "bad number '" + s + "'");
    }
    if (used != s.size()) fail(where, line, "bad number '" + s + "'");
    return v;
}

int parse_int(const std::string& s, const std::string& where, int line) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        fail(where, line, "bad integer '" + s + "'");
    }
    if (used != s.size()) fail(where, line, "bad integer '" + s + "'");
    return v;
}

}  // namespace

std::string model_to_text(const AnyModel& m) {
    std::ostringstream out;
    out << kHeader << '\n';
    if (const auto* pw = std::get_if<PiecewiseLagModel>(&m)) {
        out << "kind piecewise\n";
        out << "driver " << pw->driver_id << '\n';
        out << "response " << pw->response_id << '\n';
        out << "transform " << to_string(pw->transform) << '\n';
        out << "open_ended " << (pw->open_ended ? "true" : "false") << '\n';
        for (const Segment& s : pw->segments)
            out << "segment " << s.start.str() << ' ' << s.end.str() << " lag " << s.lag
                << " slope " << format_double(s.slope) << " intercept "
                << format_double(s.intercept) << '\n';
    } else {
        const auto& gen = std::get<GeneralizedModel>(m);
        out << "kind generalized\n";
        out << "lf " << gen.lf_id << '\n';
        out << "ue " << gen.ue_id << '\n';
        out << "response " << gen.response_id << '\n';
        out << "transform " << to_string(gen.transform) << '\n';
        for (const GeneralizedSegment& s : gen.segments)
            out << "segment " << s.start.str() << ' ' << s.end.str() << " lag_lf " << s.lag_lf
                << " lag_ue " << s.lag_ue << " slope_lf " << format_double(s.slope_lf)
                << " slope_ue " << format_double(s.slope_ue) << " intercept "
                << format_double(s.intercept) << '\n';
    }
    return out.str();
}

AnyModel model_from_text(const std::string& text, const std::string& where) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    auto next = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return true;
        }
        return false;
    };

    if (!next() || line != kHeader)
        throw DataError(where + ": not a model file (missing '" + std::string(kHeader) + "')");
    if (!next() || tokens(line).size() != 2 || tokens(line)[0] != "kind")
        fail(where, lineno, "expected 'kind piecewise|generalized'");
    const std::string kind = tokens(line)[1];

    auto expect_field = [&](const char* name) -> std::string {
        if (!next()) fail(where, lineno, std::string("unexpected end, wanted '") + name + "'");
        const auto t = tokens(line);
        if (t.size() != 2 || t[0] != name)
            fail(where, lineno, std::string("expected '") + name + " <value>'");
        return t[1];
    };

    if (kind == "piecewise") {
        PiecewiseLagModel m;
        m.driver_id = expect_field("driver");
        m.response_id = expect_field("response");
        m.transform = driver_transform_from_string(expect_field("transform"));
        const std::string open = expect_field("open_ended");
        if (open != "true" && open != "false") fail(where, lineno, "open_ended must be true/false");
        m.open_ended = open == "true";
        while (next()) {
            const auto t = tokens(line);
            if (t.size() != 9 || t[0] != "segment" || t[3] != "lag" || t[5] != "slope" ||
                t[7] != "intercept")
                fail(where, lineno, "malformed segment line");
            Segment s;
            s.start = parse_period(t[1]);
            s.end = parse_period(t[2]);
            s.lag = parse_int(t[4], where, lineno);
            s.slope = parse_double(t[6], where, lineno);
            s.intercept = parse_double(t[8], where, lineno);
            if (period_less(s.end, s.start)) fail(where, lineno, "segment ends before it starts");
            m.segments.push_back(s);
        }
        if (m.segments.empty()) throw DataError(where + ": model has no segments");
        return m;
    }
    if (kind == "generalized") {
        GeneralizedModel m;
        m.lf_id = expect_field("lf");
        m.ue_id = expect_field("ue");
        m.response_id = expect_field("response");
        m.transform = driver_transform_from_string(expect_field("transform"));
        while (next()) {
            const auto t = tokens(line);
            if (t.size() != 13 || t[0] != "segment" || t[3] != "lag_lf" || t[5] != "lag_ue" ||
                t[7] != "slope_lf" || t[9] != "slope_ue" || t[11] != "intercept")
                fail(where, lineno, "malformed segment line");
            GeneralizedSegment s;
            s.start = parse_period(t[1]);
            s.end = parse_period(t[2]);
            s.lag_lf = parse_int(t[4], where, lineno);
            s.lag_ue = parse_int(t[6], where, lineno);
            s.slope_lf = parse_double(t[8], where, lineno);
            s.slope_ue = parse_double(t[10], where, lineno);
            s.intercept = parse_double(t[12], where, lineno);
            if (period_less(s.end, s.start)) fail(where, lineno, "segment ends before it starts");
            m.segments.push_back(s);
        }
        if (m.segments.empty()) throw DataError(where + ": model has no segments");
        return m;
    }
    throw DataError(where + ": unknown model kind '" + kind + "'");
}

void save_model(const std::filesystem::path& path, const AnyModel& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    out << model_to_text(m);
    if (!out) throw DataError("write failed for '" + path.string() + "'");
}

AnyModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_text(buf.str(), path.string());
}

}  // namespace lfecon
