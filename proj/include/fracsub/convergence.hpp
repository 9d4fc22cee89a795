#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fracsub {

enum class ConvergenceAxis { Time, Space };

struct ConvergenceRow {
    double param = 0.0;  ///< N (time) or 1/h (space)
    double error = 0.0;
    std::optional<double> rate;  ///< order observed against the previous row
};

/// Errors along a refinement chain with observed rates.
struct ConvergenceReport {
    ConvergenceAxis axis = ConvergenceAxis::Time;
    std::vector<ConvergenceRow> rows;
    std::optional<double> average_rate;  ///< mean of the defined rates
    bool valid = true;                   ///< false if a run aborted the study
    std::string message;
};

/// log(coarse / fine) / log(refinement), i.e. log2 for halved steps; none if
/// either error is zero or not finite.
std::optional<double> observed_rate(double coarse, double fine, double refinement = 2.0);

/// Build a report from a refinement chain (params = N or 1/h, increasing) and
/// fill the rates and their average.
/// @throws ConfigError if params are not positive and strictly increasing
ConvergenceReport make_report(ConvergenceAxis axis, const std::vector<double>& params,
                              const std::vector<double>& errors);

/// One line of a reproduced table.
struct TableRecord {
    std::string scheme;
    double alpha = 0.0;
    std::optional<double> exponent;  ///< nu or mu; empty for rows without one
    double param = 0.0;
    double error = 0.0;
    std::optional<double> rate;
    std::optional<double> rate_theory;
};

inline constexpr const char* kCsvHeader = "scheme,alpha,exp,param,error,rate,rate_theory";

/// CSV with header kCsvHeader; errors as %.6E, rates as %.2f, empty fields
/// for missing values.
void write_csv(std::ostream& os, const std::vector<TableRecord>& records);
/// @throws ConfigError on a malformed file
std::vector<TableRecord> read_csv(std::istream& is);

/// Records of one report, all sharing scheme/alpha/exponent.
std::vector<TableRecord> to_records(const ConvergenceReport& report, const std::string& scheme, double alpha,
                                    std::optional<double> exponent, std::optional<double> rate_theory);

}  // namespace fracsub
