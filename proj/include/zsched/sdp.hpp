#pragma once

// Average-reward optimal control of two streams, used as a reference for how
// far a heuristic is from optimal.  The controlled CTMC is truncated at a
// queue-length cap (arrivals to a full queue are lost), uniformized, and
// solved by relative value iteration.

#include <zsched/engine.hpp>
#include <zsched/kernels.hpp>
#include <zsched/workload.hpp>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace zsched::sdp {

inline constexpr std::size_t kDefaultCap = 150;
inline constexpr double kDefaultTolerance = 1e-8;
inline constexpr std::size_t kDefaultMaxIterations = 1'000'000;
/// Relative gap below which two serve actions count as tied.
inline constexpr double kTieTolerance = 1e-10;

enum class Action : std::uint8_t { serve_first = 0, serve_second = 1, idle = 2 };

struct Transition {
    std::size_t l1 = 0;
    std::size_t l2 = 0;
    double probability = 0.0;
    double reward = 0.0;
};

class SdpModel {
public:
    /// Throws ConfigError unless exactly two streams and cap >= 1.
    SdpModel(std::span<const StreamSpec> specs, std::size_t cap = kDefaultCap);

    const StreamSpec& stream(std::size_t i) const { return specs_[i]; }
    std::size_t cap() const { return rates_.cap; }
    double uniformization() const { return rates_.uniformization; }
    const kernels::TwoQueueRates& rates() const { return rates_; }

    bool legal(std::size_t l1, std::size_t l2, Action a) const;

    /// One-step law of the uniformized chain from (l1, l2) under a legal action,
    /// self-loop included.  Rewards are attached to completion transitions.
    std::vector<Transition> transitions(std::size_t l1, std::size_t l2, Action a) const;

    /// Largest stationary mass beyond the cap over both streams for a queue
    /// that receives no service at all, which bounds every policy's marginal.
    double tail_mass() const;

private:
    StreamSpec specs_[2];
    kernels::TwoQueueRates rates_;
};

struct SdpSolution {
    double gain = 0.0;
    std::vector<double> bias;
    std::vector<Action> policy;
    std::size_t iterations = 0;
    std::size_t cap = 0;

    /// Action at (l1, l2); lengths past the cap are clamped to it.
    Action action(std::size_t l1, std::size_t l2) const;
};

/// Relative value iteration until the span of successive differences drops
/// below tol.  Throws NumericalError after max_iters sweeps, or if the cap
/// leaves more than 1e-6 stationary mass in the tail.
SdpSolution solve(const SdpModel& model, double tol = kDefaultTolerance,
                  std::size_t max_iters = kDefaultMaxIterations);

/// 100 * (gain - revenue_rate) / gain.  Throws ConfigError if gain <= 0.
double gap(double gain, double revenue_rate);

/// Plays a solved policy in the CTMC engine.
class SdpQueuePolicy final : public QueuePolicy {
public:
    SdpQueuePolicy(const SdpModel& model, SdpSolution solution);
    void service_rates(std::span<const std::size_t> lengths, std::span<double> rates) const override;

private:
    SdpSolution solution_;
    double service_[2];
};

} // namespace zsched::sdp
