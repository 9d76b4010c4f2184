#include "lfecon/csv_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "lfecon/errors.hpp"

namespace lfecon {

namespace {

[[noreturn]] void fail(const std::string& where, int line, const std::string& message) {
    throw DataError(where + ":" + std::to_string(line) + ": " + message);
}

// Strip one trailing CR so files with Windows line endings still parse.
std::string chomp(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

double parse_value(const std::string& field, const std::string& where, int line) {
    std::size_t consumed = 0;
    double v = 0.0;
    try {
        v = std::stod(field, &consumed);
    } catch (const std::exception&) {
        fail(where, line, "unparseable value '" + field + "'");
    }
    if (consumed != field.size())
        fail(where, line, "trailing garbage in value '" + field + "'");
    return v;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Series parse_series_csv(const std::string& text, const std::string& id,
                        const std::string& where, std::optional<Frequency> expected,
                        const std::string& units) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    if (!std::getline(in, line)) throw DataError(where + ": empty file");
    ++lineno;
    if (chomp(line) != "period,value")
        fail(where, lineno, "expected header 'period,value', got '" + chomp(line) + "'");

    std::optional<Period> start;
    std::optional<Period> prev;
    std::vector<std::optional<double>> values;
    while (std::getline(in, line)) {
        ++lineno;
        line = chomp(line);
        if (line.empty()) continue;  // tolerate a trailing blank line
        const auto comma = line.find(',');
        if (comma == std::string::npos) fail(where, lineno, "missing comma");
        if (line.find(',', comma + 1) != std::string::npos)
            fail(where, lineno, "more than two fields");

        Period p;
        try {
            p = parse_period(line.substr(0, comma));
        } catch (const Error& e) {
            fail(where, lineno, e.what());
        }
        if (!start) {
            start = p;
        } else {
            if (p.is_quarterly() != start->is_quarterly())
                fail(where, lineno, "mixed annual and quarterly periods");
            const int gap = periods_between(*prev, p);
            if (gap == 0) fail(where, lineno, "duplicate period " + p.str());
            if (gap < 0) fail(where, lineno, "out-of-order period " + p.str());
            for (int k = 1; k < gap; ++k) values.emplace_back();  // implicit gap
        }
        prev = p;

        const std::string field = line.substr(comma + 1);
        if (field.empty())
            values.emplace_back();
        else
            values.emplace_back(parse_value(field, where, lineno));
    }
    if (!start) throw DataError(where + ": no data rows");

    const Frequency freq = start->is_quarterly() ? Frequency::quarterly : Frequency::annual;
    if (expected && *expected != freq)
        throw DataError(where + ": file is " + to_string(freq) + " but the catalog declares " +
                        to_string(*expected));
    return Series(id, freq, *start, std::move(values), units);
}

Series read_series_csv(const std::filesystem::path& path, const std::string& id,
                       std::optional<Frequency> expected, const std::string& units) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_series_csv(buf.str(), id, path.string(), expected, units);
}

std::string to_csv(const Series& s) {
    std::string out = "period,value\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        out += s.period(i).str();
        out += ',';
        if (const auto& v = s.value(i)) out += format_double(*v);
        out += '\n';
    }
    return out;
}

void write_series_csv(const std::filesystem::path& path, const Series& s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    out << to_csv(s);
    if (!out) throw DataError("write failed for '" + path.string() + "'");
}

}  // namespace lfecon
