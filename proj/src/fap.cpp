#include <zsched/fap.hpp>

#include <zsched/analytic.hpp>
#include <zsched/errors.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace zsched {

AllocationVector::AllocationVector(std::vector<double> f)
    : f_(std::move(f))
{
    if (f_.empty()) {
        throw ConfigError("allocation vector is empty");
    }
    double sum = 0.0;
    for (double x : f_) {
        if (!(std::isfinite(x) && x >= 0.0)) {
            throw ConfigError("allocation fractions must be finite and >= 0");
        }
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw ConfigError("allocation fractions must sum to 1");
    }
    for (double& x : f_) {
        x /= sum;
    }
}

AllocationVector AllocationVector::uniform(std::size_t n)
{
    return AllocationVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

AllocationVector AllocationVector::vertex(std::size_t n, std::size_t i)
{
    std::vector<double> f(n, 0.0);
    f.at(i) = 1.0;
    return AllocationVector(std::move(f));
}

namespace fap {

std::vector<double> revenue_batch(std::span<const StreamSpec> specs, std::span<const double> allocations)
{
    const std::size_t n = specs.size();
    const std::size_t points = allocations.size() / n;
    std::vector<double> r(points * n), a(points * n), d(points * n), p0(points * n);
    for (std::size_t k = 0; k < points; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            r[k * n + i] = specs[i].arrival_rate();
            a[k * n + i] = specs[i].service_rate() * allocations[k * n + i];
            d[k * n + i] = specs[i].deadline_rate();
        }
    }
    analytic::pi0_batch(r, a, d, p0);
    std::vector<double> out(points, 0.0);
    for (std::size_t k = 0; k < points; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            out[k] += specs[i].reward() * a[k * n + i] * (1.0 - p0[k * n + i]);
        }
    }
    return out;
}

namespace {

class Search {
public:
    explicit Search(std::span<const StreamSpec> specs) : specs_(specs) {}

    double eval(const std::vector<double>& f)
    {
        ++evaluations_;
        const double v = analytic::total_revenue(specs_, f);
        consider(f, v);
        return v;
    }

    void consider(const std::vector<double>& f, double v)
    {
        if (best_f_.empty() || v > best_v_ || (v == best_v_ && f < best_f_)) {
            best_f_ = f;
            best_v_ = v;
        }
    }

    std::size_t evaluations_ = 0;
    std::vector<double> best_f_;
    double best_v_ = 0.0;

private:
    std::span<const StreamSpec> specs_;
};

FapResult optimize_two(std::span<const StreamSpec> specs, double tol)
{
    Search search(specs);
    constexpr std::size_t kGrid = 101;
    std::vector<double> grid(2 * kGrid);
    for (std::size_t k = 0; k < kGrid; ++k) {
        const double x = static_cast<double>(k) / static_cast<double>(kGrid - 1);
        grid[2 * k] = x;
        grid[2 * k + 1] = 1.0 - x;
    }
    const std::vector<double> values = revenue_batch(specs, grid);
    search.evaluations_ += kGrid;
    std::size_t arg = 0;
    for (std::size_t k = 0; k < kGrid; ++k) {
        search.consider({grid[2 * k], grid[2 * k + 1]}, values[k]);
        if (values[k] > values[arg]) {
            arg = k;
        }
    }

    double lo = grid[2 * (arg > 0 ? arg - 1 : 0)];
    double hi = grid[2 * std::min(arg + 1, kGrid - 1)];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    auto f_at = [&](double x) { return search.eval({x, 1.0 - x}); };
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double v1 = f_at(x1);
    double v2 = f_at(x2);
    while (hi - lo > tol) {
        if (v1 >= v2) {
            hi = x2;
            x2 = x1;
            v2 = v1;
            x1 = hi - inv_phi * (hi - lo);
            v1 = f_at(x1);
        } else {
            lo = x1;
            x1 = x2;
            v1 = v2;
            x2 = lo + inv_phi * (hi - lo);
            v2 = f_at(x2);
        }
    }
    return FapResult{AllocationVector(search.best_f_), search.best_v_, search.evaluations_, 1};
}

std::vector<std::vector<double>> starting_points(std::span<const StreamSpec> specs)
{
    const std::size_t n = specs.size();
    std::vector<std::vector<double>> starts;
    auto normalized = [&](auto weight) {
        std::vector<double> f(n);
        for (std::size_t i = 0; i < n; ++i) {
            f[i] = weight(specs[i]);
        }
        const double s = std::accumulate(f.begin(), f.end(), 0.0);
        for (double& x : f) {
            x /= s;
        }
        return f;
    };
    auto push = [&](std::vector<double> f) {
        if (starts.size() < 10 && std::find(starts.begin(), starts.end(), f) == starts.end()) {
            starts.push_back(std::move(f));
        }
    };
    push(std::vector<double>(n, 1.0 / static_cast<double>(n)));
    push(normalized([](const StreamSpec& s) { return s.arrival_rate(); }));
    push(normalized([](const StreamSpec& s) { return s.reward() * s.service_rate(); }));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> f(n, 0.0);
        f[i] = 1.0;
        push(std::move(f));
    }
    for (std::size_t i = 0; starts.size() < 10 && i < n; ++i) {
        std::vector<double> f(n, 0.0);
        f[i] = 0.5;
        f[(i + 1) % n] += 0.5;
        push(std::move(f));
    }
    return starts;
}

FapResult optimize_many(std::span<const StreamSpec> specs, double tol)
{
    const std::size_t n = specs.size();
    Search search(specs);
    std::vector<std::pair<std::vector<double>, double>> finals;

    for (const auto& start : starting_points(specs)) {
        std::vector<double> f = start;
        double v = search.eval(f);
        double step = 0.25;
        while (step >= tol) {
            bool improved = false;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (i == j || f[j] <= 0.0) {
                        continue;
                    }
                    // Move mass from j to i; keep doubling while it pays off.
                    double t = std::min(step, f[j]);
                    for (;;) {
                        std::vector<double> g = f;
                        g[i] += t;
                        g[j] -= t;
                        const double vg = search.eval(g);
                        if (!(vg > v)) {
                            break;
                        }
                        f = std::move(g);
                        v = vg;
                        improved = true;
                        if (f[j] <= 0.0) {
                            break;
                        }
                        t = std::min(2.0 * t, f[j]);
                    }
                }
            }
            if (!improved) {
                step *= 0.5;
            }
        }
        finals.emplace_back(f, v);
    }

    std::size_t distinct = 0;
    for (std::size_t a = 0; a < finals.size(); ++a) {
        bool seen = false;
        for (std::size_t b = 0; b < a && !seen; ++b) {
            double dist = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                dist = std::max(dist, std::abs(finals[a].first[i] - finals[b].first[i]));
            }
            const double rel = std::abs(finals[a].second - finals[b].second) /
                               std::max(std::abs(finals[a].second), 1e-300);
            seen = dist <= 10.0 * tol || rel <= 1e-9;
        }
        distinct += seen ? 0 : 1;
    }
    return FapResult{AllocationVector(search.best_f_), search.best_v_, search.evaluations_, distinct};
}

} // namespace

FapResult optimize(std::span<const StreamSpec> specs, double tol)
{
    if (specs.empty()) {
        throw ConfigError("fap: need at least one stream");
    }
    if (!(tol > 0.0 && tol <= 0.1)) {
        throw ConfigError("fap: tolerance must lie in (0, 0.1]");
    }
    if (specs.size() == 1) {
        const double v = analytic::stream_revenue(specs[0], 1.0);
        return FapResult{AllocationVector({1.0}), v, 1, 1};
    }
    return specs.size() == 2 ? optimize_two(specs, tol) : optimize_many(specs, tol);
}

} // namespace fap
} // namespace zsched
