#include <zsched/sdp.hpp>

#include "kernels/two_queue_backup.hpp"

#include <zsched/analytic.hpp>
#include <zsched/errors.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace zsched::sdp {

SdpModel::SdpModel(std::span<const StreamSpec> specs, std::size_t cap)
{
    if (specs.size() != 2) {
        throw ConfigError("the dynamic-programming oracle handles exactly two streams");
    }
    if (cap == 0) {
        throw ConfigError("queue-length cap must be >= 1");
    }
    specs_[0] = specs[0];
    specs_[1] = specs[1];
    rates_.cap = cap;
    for (int i = 0; i < 2; ++i) {
        rates_.arrival[i] = specs[i].arrival_rate();
        rates_.service[i] = specs[i].service_rate();
        rates_.deadline[i] = specs[i].deadline_rate();
        rates_.reward[i] = specs[i].reward();
    }
    const double c = static_cast<double>(cap);
    rates_.uniformization = rates_.arrival[0] + rates_.arrival[1] + std::max(rates_.service[0], rates_.service[1]) +
                            c * (rates_.deadline[0] + rates_.deadline[1]);
}

bool SdpModel::legal(std::size_t l1, std::size_t l2, Action a) const
{
    switch (a) {
    case Action::serve_first:
        return l1 > 0;
    case Action::serve_second:
        return l2 > 0;
    case Action::idle:
        return l1 == 0 && l2 == 0;
    }
    return false;
}

std::vector<Transition> SdpModel::transitions(std::size_t l1, std::size_t l2, Action a) const
{
    if (l1 > cap() || l2 > cap() || !legal(l1, l2, a)) {
        throw ConfigError("illegal state or action");
    }
    const double lam = rates_.uniformization;
    std::vector<Transition> out;
    double stay = lam;
    auto add = [&](std::size_t x, std::size_t y, double rate, double reward) {
        if (rate > 0.0) {
            out.push_back(Transition{x, y, rate / lam, reward});
            stay -= rate;
        }
    };
    // Arrivals to a full queue are lost and fold into the self-loop.
    if (l1 < cap()) {
        add(l1 + 1, l2, rates_.arrival[0], 0.0);
    }
    if (l2 < cap()) {
        add(l1, l2 + 1, rates_.arrival[1], 0.0);
    }
    if (l1 > 0) {
        add(l1 - 1, l2, static_cast<double>(l1) * rates_.deadline[0], 0.0);
    }
    if (l2 > 0) {
        add(l1, l2 - 1, static_cast<double>(l2) * rates_.deadline[1], 0.0);
    }
    if (a == Action::serve_first) {
        add(l1 - 1, l2, rates_.service[0], rates_.reward[0]);
    } else if (a == Action::serve_second) {
        add(l1, l2 - 1, rates_.service[1], rates_.reward[1]);
    }
    if (stay < -1e-12 * lam) {
        throw NumericalError("uniformization constant below a state's outflow");
    }
    out.push_back(Transition{l1, l2, std::max(stay, 0.0) / lam, 0.0});
    return out;
}

double SdpModel::tail_mass() const
{
    double worst = 0.0;
    for (int i = 0; i < 2; ++i) {
        const analytic::QueueParams p(rates_.arrival[i], 0.0, rates_.deadline[i]);
        const std::vector<double> pi = analytic::stationary_prefix(p, cap());
        worst = std::max(worst, 1.0 - std::accumulate(pi.begin(), pi.end(), 0.0));
    }
    return worst;
}

Action SdpSolution::action(std::size_t l1, std::size_t l2) const
{
    l1 = std::min(l1, cap);
    l2 = std::min(l2, cap);
    return policy[l1 * (cap + 1) + l2];
}

SdpSolution solve(const SdpModel& model, double tol, std::size_t max_iters)
{
    if (!(tol > 0.0)) {
        throw ConfigError("value-iteration tolerance must be > 0");
    }
    if (const double tail = model.tail_mass(); tail > 1e-6) {
        std::ostringstream os;
        os << "queue-length cap " << model.cap() << " leaves stationary tail mass " << tail
           << " > 1e-6; raise the cap";
        throw NumericalError(os.str());
    }
    const kernels::TwoQueueRates& m = model.rates();
    const std::size_t w = m.cap + 1;
    std::vector<double> h(w * w, 0.0), next(w * w, 0.0);
    const kernels::Isa isa = kernels::active_isa();

    SdpSolution sol;
    sol.cap = m.cap;
    kernels::SweepStats st;
    bool converged = false;
    for (std::size_t it = 1; it <= max_iters; ++it) {
        st = kernels::bellman_sweep(m, h, next, isa);
        const double offset = next[0];
        for (std::size_t k = 0; k < h.size(); ++k) {
            h[k] = next[k] - offset;
        }
        sol.iterations = it;
        if (st.diff_max - st.diff_min < tol) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw NumericalError("relative value iteration did not converge in " + std::to_string(max_iters) +
                             " sweeps");
    }
    sol.gain = m.uniformization * 0.5 * (st.diff_max + st.diff_min);

    sol.policy.resize(w * w);
    for (std::size_t i = 0; i < w; ++i) {
        for (std::size_t j = 0; j < w; ++j) {
            const auto q = kernels::detail::backup_state(m, h.data(), i, j);
            Action a = Action::idle;
            if (i == 0 && j > 0) {
                a = Action::serve_second;
            } else if (i > 0 && j == 0) {
                a = Action::serve_first;
            } else if (i > 0 && j > 0) {
                // Values within rounding of each other are ties: serve the
                // longer queue, then stream 1.
                const double diff = q.serve[0] - q.serve[1];
                const double scale = std::max({std::abs(q.serve[0]), std::abs(q.serve[1]), 1.0});
                if (std::abs(diff) <= kTieTolerance * scale) {
                    a = j > i ? Action::serve_second : Action::serve_first;
                } else {
                    a = diff > 0 ? Action::serve_first : Action::serve_second;
                }
            }
            sol.policy[i * w + j] = a;
        }
    }
    sol.bias = std::move(h);
    return sol;
}

double gap(double gain, double revenue_rate)
{
    if (!(gain > 0.0)) {
        throw ConfigError("optimal gain must be > 0 to express a percentage loss");
    }
    return 100.0 * (gain - revenue_rate) / gain;
}

SdpQueuePolicy::SdpQueuePolicy(const SdpModel& model, SdpSolution solution)
    : solution_(std::move(solution))
{
    service_[0] = model.stream(0).service_rate();
    service_[1] = model.stream(1).service_rate();
}

void SdpQueuePolicy::service_rates(std::span<const std::size_t> lengths, std::span<double> rates) const
{
    rates[0] = rates[1] = 0.0;
    switch (solution_.action(lengths[0], lengths[1])) {
    case Action::serve_first:
        rates[0] = service_[0];
        break;
    case Action::serve_second:
        rates[1] = service_[1];
        break;
    case Action::idle:
        break;
    }
}

} // namespace zsched::sdp
