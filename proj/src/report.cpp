// report.cpp

#include "zrl/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "zrl/errors.hpp"

#ifndef ZRL_VERSION
#define ZRL_VERSION "0.0.0"
#endif

namespace zrl {

std::string to_string(Relation r) {
    switch (r) {
        case Relation::GreaterEqual: return ">=";
        case Relation::LessEqual: return "<=";
        case Relation::Approx: return "~";
        case Relation::Informational: return "informational";
    }
    return "informational";
}

Relation relation_from_string(const std::string& s) {
    if (s == ">=") return Relation::GreaterEqual;
    if (s == "<=") return Relation::LessEqual;
    if (s == "~") return Relation::Approx;
    if (s == "informational") return Relation::Informational;
    throw Error("unknown relation '" + s + "'");
}

namespace {

double modulus(const Measured& m) {
    if (const auto* d = std::get_if<double>(&m)) return *d;
    return std::abs(std::get<std::complex<double>>(m));
}

}  // namespace

CheckRecord make_check(std::string name, Measured measured, double reference, Relation relation,
                       double tolerance) {
    CheckRecord c{std::move(name), measured, reference, relation, tolerance, true};
    const double m = modulus(measured);
    switch (relation) {
        case Relation::GreaterEqual: c.pass = std::isfinite(m) && m >= reference - tolerance; break;
        case Relation::LessEqual: c.pass = std::isfinite(m) && m <= reference + tolerance; break;
        case Relation::Approx: c.pass = std::isfinite(m) && std::abs(m - reference) <= tolerance; break;
        case Relation::Informational: c.pass = true; break;
    }
    return c;
}

bool RunReport::all_pass() const {
    for (const auto& c : checks)
        if (c.relation != Relation::Informational && !c.pass) return false;
    return true;
}

const Series* RunReport::find_series(const std::string& name) const {
    for (const auto& s : series)
        if (s.name == name) return &s;
    return nullptr;
}

json encode_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double decode_double(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "nan") return std::nan("");
        if (s == "inf") return HUGE_VAL;
        if (s == "-inf") return -HUGE_VAL;
    }
    throw Error("report: expected a number, got " + j.dump());
}

namespace {

json encode_measured(const Measured& m) {
    if (const auto* d = std::get_if<double>(&m)) return encode_double(*d);
    const auto z = std::get<std::complex<double>>(m);
    return json{{"re", encode_double(z.real())}, {"im", encode_double(z.imag())}};
}

Measured decode_measured(const json& j) {
    if (j.is_object()) return std::complex<double>(decode_double(j.at("re")), decode_double(j.at("im")));
    return decode_double(j);
}

}  // namespace

json to_json(const RunReport& r) {
    json out;
    out["command"] = r.command;
    out["config"] = r.config;
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name},
                          {"measured", encode_measured(c.measured)},
                          {"bound_or_reference", encode_double(c.reference)},
                          {"relation", to_string(c.relation)},
                          {"tolerance", encode_double(c.tolerance)},
                          {"pass", c.pass}});
    out["checks"] = checks;
    out["values"] = r.values;
    json series = json::array();
    for (const auto& s : r.series) {
        json rows = json::array();
        for (const auto& row : s.rows) {
            json jr = json::array();
            for (const double v : row) jr.push_back(encode_double(v));
            rows.push_back(jr);
        }
        series.push_back({{"name", s.name}, {"columns", s.columns}, {"rows", rows}});
    }
    out["series"] = series;
    out["all_pass"] = r.all_pass();
    out["timing"] = {{"elapsed_seconds", r.elapsed_seconds}};
    out["version"] = r.version;
    return out;
}

RunReport report_from_json(const json& j) {
    RunReport r;
    r.command = j.at("command").get<std::string>();
    r.config = j.at("config");
    for (const auto& c : j.at("checks")) {
        CheckRecord rec;
        rec.name = c.at("name").get<std::string>();
        rec.measured = decode_measured(c.at("measured"));
        rec.reference = decode_double(c.at("bound_or_reference"));
        rec.relation = relation_from_string(c.at("relation").get<std::string>());
        rec.tolerance = decode_double(c.at("tolerance"));
        rec.pass = c.at("pass").get<bool>();
        r.checks.push_back(std::move(rec));
    }
    r.values = j.at("values");
    for (const auto& s : j.at("series")) {
        Series ser;
        ser.name = s.at("name").get<std::string>();
        ser.columns = s.at("columns").get<std::vector<std::string>>();
        for (const auto& row : s.at("rows")) {
            std::vector<double> v;
            for (const auto& x : row) v.push_back(decode_double(x));
            ser.rows.push_back(std::move(v));
        }
        r.series.push_back(std::move(ser));
    }
    r.elapsed_seconds = j.at("timing").at("elapsed_seconds").get<double>();
    r.version = j.at("version").get<std::string>();
    return r;
}

std::uint64_t determinism_hash(const RunReport& r) {
    json j = to_json(r);
    j.erase("timing");
    const std::string text = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string emit_plot_data(const RunReport& r, const std::string& kind) {
    const Series* s = r.find_series(kind);
    if (!s) throw Error("plot data: report has no series '" + kind + "'");
    if (s->rows.empty()) throw Error("plot data: series '" + kind + "' is empty");
    std::string out;
    for (std::size_t i = 0; i < s->columns.size(); ++i) {
        if (i) out += ',';
        out += s->columns[i];
    }
    out += '\n';
    char buf[40];
    for (const auto& row : s->rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            std::snprintf(buf, sizeof buf, "%.17g", row[i]);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

Series parse_csv(const std::string& text, const std::string& name) {
    Series s;
    s.name = name;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw Error("csv: missing header");
    {
        std::istringstream hs(line);
        std::string col;
        while (std::getline(hs, col, ',')) s.columns.push_back(col);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
        if (row.size() != s.columns.size()) throw Error("csv: ragged row");
        s.rows.push_back(std::move(row));
    }
    return s;
}

std::string version_string() { return ZRL_VERSION; }

}  // namespace zrl
