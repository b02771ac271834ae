// report.hpp
// RunReport: check records, named values and plot series for one pipeline
// run, with lossless JSON round-trip, a determinism hash and CSV emission.

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace zrl {

using json = nlohmann::json;

enum class Relation { GreaterEqual, LessEqual, Approx, Informational };

std::string to_string(Relation r);
Relation relation_from_string(const std::string& s);

using Measured = std::variant<double, std::complex<double>>;

struct CheckRecord {
    std::string name;
    Measured measured;
    double reference = 0.0;
    Relation relation = Relation::Informational;
    double tolerance = 0.0;
    bool pass = true;
};

// Builds a record and evaluates it. Complex measurements compare by modulus.
// >=: m >= ref - tol; <=: m <= ref + tol; ~: |m - ref| <= tol.
// Non-finite measurements fail every non-informational relation.
CheckRecord make_check(std::string name, Measured measured, double reference, Relation relation,
                       double tolerance = 0.0);

struct Series {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct RunReport {
    std::string command;
    json config = json::object();
    std::vector<CheckRecord> checks;
    json values = json::object();
    std::vector<Series> series;
    double elapsed_seconds = 0.0;
    std::string version;

    void add(CheckRecord c) { checks.push_back(std::move(c)); }
    // True iff every non-informational check passed.
    bool all_pass() const;
    const Series* find_series(const std::string& name) const;
};

// Doubles are stored as JSON numbers when finite, otherwise as the strings
// "nan", "inf" and "-inf".
json encode_double(double v);
double decode_double(const json& j);

json to_json(const RunReport& r);
RunReport report_from_json(const json& j);

// FNV-1a over the compact JSON dump with the timing field removed.
std::uint64_t determinism_hash(const RunReport& r);
std::string hash_hex(std::uint64_t h);

// CSV with a header row, %.17g floats and LF line endings. Throws
// Error when the series is missing or empty.
std::string emit_plot_data(const RunReport& r, const std::string& kind);
Series parse_csv(const std::string& text, const std::string& name = {});

std::string version_string();

}  // namespace zrl
