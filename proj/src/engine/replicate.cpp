#include <zsched/engine.hpp>

#include <zsched/errors.hpp>
#include <zsched/rng.hpp>

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace zsched {

ReplicationResult summarize_runs(std::vector<SimMetrics> runs)
{
    ReplicationResult r;
    std::vector<double> rate, epu;
    for (const auto& m : runs) {
        rate.push_back(m.revenue_rate);
        epu.push_back(m.epu);
    }
    r.revenue_rate = summarize(rate);
    r.epu = summarize(epu);
    r.runs = std::move(runs);
    return r;
}

ReplicationResult replicate(const std::function<SimMetrics(std::uint64_t, std::size_t)>& run,
                            std::uint64_t base_seed, std::size_t n_reps, std::size_t threads)
{
    if (n_reps == 0) {
        throw ConfigError("need at least one replication");
    }
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min(threads, n_reps);

    std::vector<SimMetrics> runs(n_reps);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < n_reps;) {
            try {
                runs[k] = run(derive_seed(base_seed, k), k);
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return summarize_runs(std::move(runs));
}

ReplicationResult replicate_trace(const WorkloadSpec& workload, const SchedulerFactory& make, std::size_t n_reps,
                                  std::size_t threads)
{
    workload.validate();
    return replicate(
        [&](std::uint64_t seed, std::size_t) {
            WorkloadSpec w = workload;
            w.seed = seed;
            const std::vector<Job> trace = sample_trace(w);
            auto scheduler = make();
            return run_trace(trace, w.streams.size(), *scheduler, w.horizon);
        },
        workload.seed, n_reps, threads);
}

ReplicationResult replicate_ctmc(std::span<const StreamSpec> specs, const QueuePolicy& policy, double horizon,
                                 std::uint64_t base_seed, std::size_t n_reps, std::size_t threads)
{
    return replicate([&](std::uint64_t seed, std::size_t) { return run_ctmc(specs, policy, horizon, seed); },
                     base_seed, n_reps, threads);
}

} // namespace zsched
