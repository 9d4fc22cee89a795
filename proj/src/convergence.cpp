#include "fracsub/convergence.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "fracsub/error.hpp"

namespace fracsub {

std::optional<double> observed_rate(double coarse, double fine, double refinement) {
    if (!(coarse > 0.0) || !(fine > 0.0) || !std::isfinite(coarse) || !std::isfinite(fine)) return std::nullopt;
    if (refinement == 2.0) return std::log2(coarse / fine);
    return std::log(coarse / fine) / std::log(refinement);
}

ConvergenceReport make_report(ConvergenceAxis axis, const std::vector<double>& params,
                              const std::vector<double>& errors) {
    if (params.size() != errors.size()) throw DimensionMismatch("one error per refinement parameter expected");
    for (std::size_t i = 1; i < params.size(); ++i)
        if (!(params[i] > params[i - 1]) || !(params[i - 1] > 0.0))
            throw ConfigError("refinement parameters must be positive and strictly increasing");
    ConvergenceReport rep;
    rep.axis = axis;
    double sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < params.size(); ++i) {
        ConvergenceRow row{params[i], errors[i], std::nullopt};
        if (i > 0) row.rate = observed_rate(errors[i - 1], errors[i], params[i] / params[i - 1]);
        if (row.rate) {
            sum += *row.rate;
            ++count;
        }
        rep.rows.push_back(row);
    }
    if (count > 0) rep.average_rate = sum / count;
    return rep;
}

namespace {

std::string format(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_number(const std::string& s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw ConfigError("malformed number '" + s + "' in CSV");
    return v;
}

std::optional<double> parse_optional(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return parse_number(s);
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<TableRecord>& records) {
    os << kCsvHeader << '\n';
    for (const auto& r : records) {
        os << r.scheme << ',' << format("%.2f", r.alpha) << ',' << (r.exponent ? format("%.2f", *r.exponent) : "")
           << ',' << format("%.0f", r.param) << ',' << format("%.6E", r.error) << ','
           << (r.rate ? format("%.2f", *r.rate) : "") << ',' << (r.rate_theory ? format("%.2f", *r.rate_theory) : "")
           << '\n';
    }
}

std::vector<TableRecord> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader) throw ConfigError("CSV header mismatch");
    std::vector<TableRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != 7) throw ConfigError("CSV row with " + std::to_string(f.size()) + " fields");
        TableRecord r;
        r.scheme = f[0];
        r.alpha = parse_number(f[1]);
        r.exponent = parse_optional(f[2]);
        r.param = parse_number(f[3]);
        r.error = parse_number(f[4]);
        r.rate = parse_optional(f[5]);
        r.rate_theory = parse_optional(f[6]);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<TableRecord> to_records(const ConvergenceReport& report, const std::string& scheme, double alpha,
                                    std::optional<double> exponent, std::optional<double> rate_theory) {
    std::vector<TableRecord> out;
    for (const auto& row : report.rows) out.push_back({scheme, alpha, exponent, row.param, row.error, row.rate, rate_theory});
    return out;
}

}  // namespace fracsub
