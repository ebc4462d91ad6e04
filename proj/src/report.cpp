#include <zsched/report.hpp>

#include <zsched/errors.hpp>
#include <zsched/rng.hpp>
#include <zsched/sdp.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

namespace zsched {

namespace {

std::string num(double x)
{
    if (std::isnan(x)) {
        return "";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_num(const std::string& s)
{
    if (s.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size()) {
        throw ConfigError("malformed number in report: '" + s + "'");
    }
    return x;
}

std::vector<double> revenue_rates(const ReplicationResult& r)
{
    std::vector<double> out;
    for (const auto& m : r.runs) {
        out.push_back(m.revenue_rate);
    }
    return out;
}

ReportRow comparison_row(const experiments::ExperimentResult& result, const experiments::Comparison& c)
{
    const auto& subject = result.run(c.subject);
    const std::vector<double> z = revenue_rates(subject.result);
    ReportRow row;
    row.experiment = result.experiment;
    row.policy = c.subject;
    row.baseline = c.baseline;
    row.n = z.size();
    row.epu = std::numeric_limits<double>::quiet_NaN();
    const double z_mean = subject.result.revenue_rate.mean;

    if (c.kind == experiments::Comparison::Kind::improvement) {
        const auto& base = result.run(c.baseline);
        const std::vector<double> b = revenue_rates(base.result);
        if (b.size() != z.size()) {
            throw std::logic_error("paired comparison needs equal replication counts");
        }
        std::vector<double> diff(z.size());
        for (std::size_t k = 0; k < z.size(); ++k) {
            diff[k] = z[k] - b[k];
        }
        const double b_mean = base.result.revenue_rate.mean;
        const Summary d = summarize(diff);
        const double scale = 100.0 / b_mean;
        row.row = "improvement";
        row.mean = improvement(z_mean, b_mean);
        row.stddev = d.stddev * scale;
        row.ci95_lo = d.ci_lo * scale;
        row.ci95_hi = d.ci_hi * scale;
        return row;
    }

    const auto& base = result.run(c.baseline);
    if (!base.sdp_gain) {
        throw std::logic_error("loss comparison against a policy without an optimal gain");
    }
    const double g = *base.sdp_gain;
    const Summary& s = subject.result.revenue_rate;
    row.row = "loss";
    row.mean = loss(g, z_mean);
    row.stddev = 100.0 * s.stddev / g;
    row.ci95_lo = loss(g, s.ci_hi);
    row.ci95_hi = loss(g, s.ci_lo);
    return row;
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

} // namespace

double improvement(double subject, double baseline)
{
    if (!(baseline > 0.0)) {
        throw ConfigError("improvement needs a positive baseline revenue");
    }
    return 100.0 * (subject - baseline) / baseline;
}

double loss(double gain, double subject) { return sdp::gap(gain, subject); }

std::vector<ReportRow> report_rows(const experiments::ExperimentResult& result)
{
    std::vector<ReportRow> rows;
    for (const auto& run : result.runs) {
        ReportRow row;
        row.experiment = result.experiment;
        row.row = "summary";
        row.policy = run.label;
        row.n = run.result.revenue_rate.n;
        row.mean = run.result.revenue_rate.mean;
        row.stddev = run.result.revenue_rate.stddev;
        row.ci95_lo = run.result.revenue_rate.ci_lo;
        row.ci95_hi = run.result.revenue_rate.ci_hi;
        row.epu = run.result.epu.mean;
        rows.push_back(row);
    }
    if (result.runs.size() > 1) {
        for (const auto& c : result.comparisons) {
            rows.push_back(comparison_row(result, c));
        }
    }
    return rows;
}

std::string report_header() { return "experiment,row,policy,baseline,n,mean,stddev,ci95_lo,ci95_hi,epu"; }

void write_report(std::ostream& out, const std::vector<ReportRow>& rows, bool header)
{
    if (header) {
        out << report_header() << '\n';
    }
    for (const auto& r : rows) {
        out << r.experiment << ',' << r.row << ',' << r.policy << ',' << r.baseline << ',' << r.n << ','
            << num(r.mean) << ',' << num(r.stddev) << ',' << num(r.ci95_lo) << ',' << num(r.ci95_hi) << ','
            << num(r.epu) << '\n';
    }
    if (!out) {
        throw ConfigError("failed to write report");
    }
}

std::string to_csv(const std::vector<ReportRow>& rows)
{
    std::ostringstream out;
    write_report(out, rows);
    return out.str();
}

std::vector<ReportRow> parse_report(const std::string& csv)
{
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line) || line != report_header()) {
        throw ConfigError("report does not start with the expected header");
    }
    std::vector<ReportRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto f = split(line);
        if (f.size() != 10) {
            throw ConfigError("report line has " + std::to_string(f.size()) + " fields, expected 10");
        }
        ReportRow r;
        r.experiment = f[0];
        r.row = f[1];
        r.policy = f[2];
        r.baseline = f[3];
        r.n = static_cast<std::size_t>(parse_num(f[4]));
        r.mean = parse_num(f[5]);
        r.stddev = parse_num(f[6]);
        r.ci95_lo = parse_num(f[7]);
        r.ci95_hi = parse_num(f[8]);
        r.epu = parse_num(f[9]);
        rows.push_back(r);
    }
    return rows;
}

void write_runs(std::ostream& out, const std::string& label, const ReplicationResult& result,
                std::uint64_t base_seed)
{
    out << "policy,replication,seed,revenue_rate,revenue_total,epu,busy_time,useful_time\n";
    for (std::size_t k = 0; k < result.runs.size(); ++k) {
        const auto& m = result.runs[k];
        out << label << ',' << k << ',' << derive_seed(base_seed, k) << ',' << num(m.revenue_rate) << ','
            << num(m.revenue_total) << ',' << num(m.epu) << ',' << num(m.busy_time) << ',' << num(m.useful_time)
            << '\n';
    }
}

} // namespace zsched
