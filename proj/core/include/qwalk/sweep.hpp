#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/graph.hpp"

namespace qwalk {

/// Sweep configuration error; the message starts with a JSON pointer.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(const std::string& pointer, const std::string& what)
        : std::invalid_argument(pointer + ": " + what), pointer_(pointer) {}
    const std::string& pointer() const noexcept { return pointer_; }

private:
    std::string pointer_;
};

struct SweepAxis {
    std::string name;
    std::vector<double> values;
};

enum class SweepFormat { Csv, Json };

/// Everything needed to evaluate one grid point. Integer parameters are
/// stored as doubles and validated on use.
struct SweepPoint {
    std::string family;
    std::map<std::string, double> params;  // n d p q gamma t m beta_O beta_E phi delta
    std::vector<double> couplings;         // circulant only
    std::string prep = "optimal";          // optimal | ground | uniform-position | balanced-phi
    std::string povm = "complete";         // complete | first-m | face | central | parity | subset | none
    std::vector<std::size_t> subset;       // povm == subset
};

struct SweepConfig {
    SweepPoint base;
    std::vector<SweepAxis> axes;  // at most two, row-major order
    SweepFormat format = SweepFormat::Csv;
    std::string output;  // empty: caller decides (stdout)
    std::size_t workers = 0;
};

struct SweepRow {
    SweepPoint point;
    std::optional<double> qfi;
    std::optional<double> max_qfi;
    std::optional<double> fi;
    std::optional<double> eta;      // fi / qfi of the same preparation
    std::optional<double> eta_max;  // fi / max_qfi
    std::string error;
};

struct SweepTable {
    std::vector<SweepRow> rows;
};

/// Column order of CSV and JSON sweep output.
const std::vector<std::string>& sweep_columns();

SweepConfig parse_sweep_config(std::string_view json_text);

/// Evaluates one point; failures are captured in SweepRow::error.
SweepRow evaluate_point(const SweepPoint& point);

SweepTable run_sweep(const SweepConfig& config);

void write_csv(const SweepTable& table, std::ostream& out);
void write_json(const SweepTable& table, std::ostream& out);

/// Parses CSV written by write_csv back into column -> cell maps.
std::vector<std::map<std::string, std::string>> read_csv(std::istream& in);
/// Rebuilds the input point of a CSV row.
SweepPoint point_from_csv_row(const std::map<std::string, std::string>& row);

/// "%.17g" formatting.
std::string format_double(double v);

}  // namespace qwalk
