#pragma once

// CSV reporting.  One "summary" row per policy, then paired comparison rows:
// "improvement" = 100 (V_subject - V_baseline) / V_baseline and
// "loss" = 100 (g - V_subject) / g against the dynamic-programming gain g.

#include <zsched/experiments.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace zsched {

struct ReportRow {
    std::string experiment;
    std::string row;  // summary | improvement | loss
    std::string policy;
    std::string baseline;
    std::size_t n = 0;
    double mean = 0.0;
    double stddev = 0.0;
    double ci95_lo = 0.0;
    double ci95_hi = 0.0;
    double epu = 0.0;  // NaN on comparison rows (written empty)
};

double improvement(double subject, double baseline);
double loss(double gain, double subject);

/// Summary rows plus comparison rows.  Comparison intervals come from the
/// per-replication paired differences; the mean is the formula applied to
/// the means.
std::vector<ReportRow> report_rows(const experiments::ExperimentResult& result);

std::string report_header();
void write_report(std::ostream& out, const std::vector<ReportRow>& rows, bool header = true);
std::string to_csv(const std::vector<ReportRow>& rows);

/// Inverse of to_csv.  Throws ConfigError on malformed input.
std::vector<ReportRow> parse_report(const std::string& csv);

/// Per-replication metrics, one line per run.
void write_runs(std::ostream& out, const std::string& label, const ReplicationResult& result,
                std::uint64_t base_seed);

} // namespace zsched
