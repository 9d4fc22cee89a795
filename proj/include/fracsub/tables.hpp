#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracsub/convergence.hpp"

namespace fracsub {

/// One published row: errors per refinement level and the printed average rate.
struct GoldenRow {
    std::string scheme;
    double alpha = 0.0;
    std::optional<double> exponent;  ///< nu or mu; empty for initial-data rows
    char example_case = 'a';
    std::vector<double> errors;
    double rate = 0.0;
    std::optional<double> rate_theory;
};

struct GoldenTable {
    int id = 0;
    ConvergenceAxis axis = ConvergenceAxis::Time;
    std::vector<int> params;  ///< N, or 1/h for the spatial tables
    std::vector<GoldenRow> rows;
};

/// Published values of tables 1..8.
/// @throws ConfigError for an id outside 1..8
const GoldenTable& golden_table(int id);

enum class ToleranceProfile { Paper, Strict };
/// "paper" or "strict".
/// @throws ConfigError otherwise
ToleranceProfile parse_tolerance_profile(std::string_view text);
std::string to_string(ToleranceProfile p);

/// Acceptance band of one table.
struct TableTolerance {
    double error_rel = 0.0;  ///< per error entry
    double rate_abs = 0.0;   ///< per average rate, around the printed value
    /// Tables with a fixed rate window instead of the printed value.
    std::optional<double> rate_lo, rate_hi;
};
/// Band for one row; the order-2 fODE table widens its window for the row
/// whose printed average rate is itself far above 2.
TableTolerance table_tolerance(int id, const GoldenRow& row, ToleranceProfile profile);

/// Comparison of one measured value with its published counterpart.
struct TableCheck {
    std::string label;
    double expected = 0.0;
    double measured = 0.0;
    double lo = 0.0;  ///< accepted interval
    double hi = 0.0;
    bool is_rate = false;
    bool finest = false;  ///< error entry of the last refinement level
    bool passed = false;
};

struct TableResult {
    int id = 0;
    std::vector<TableRecord> records;
    std::vector<TableCheck> checks;
    std::vector<std::string> failures;  ///< runs that aborted

    bool passed() const;
    std::size_t failed_count() const;
};

/// Run the full parameter grid of a table and compare with the golden values.
/// Rows run concurrently; results are independent of the thread count.
TableResult compute_table(int id, ToleranceProfile profile = ToleranceProfile::Paper);

/// compute_table, then write `<out_dir>/table<id>.csv`.
/// @throws ConfigError if the file cannot be written
TableResult reproduce_table(int id, const std::string& out_dir,
                            ToleranceProfile profile = ToleranceProfile::Paper);

}  // namespace fracsub
