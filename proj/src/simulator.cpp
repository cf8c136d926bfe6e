#include "monoseq/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "monoseq/distribution.hpp"

namespace monoseq {

namespace {

EpisodeTrace run_episode(const ValueTable& vt, const std::function<double(int)>& draw) {
    const int n = vt.horizon();
    EpisodeTrace trace;
    trace.n = n;
    const auto steps = static_cast<std::size_t>(n);
    trace.x.reserve(steps);
    trace.accepted.reserve(steps);
    trace.diffs.reserve(steps);
    trace.a_parts.reserve(steps);
    trace.b_parts.reserve(steps);
    trace.running_max.reserve(steps + 1);
    trace.length.reserve(steps + 1);
    trace.martingale.reserve(steps + 1);

    double state = 0.0;
    int length = 0;
    trace.running_max.push_back(state);
    trace.length.push_back(length);
    trace.martingale.push_back(vt.value_at(n, state));

    for (int i = 1; i <= n; ++i) {
        const int k = n - i + 1;
        const double x = draw(i);
        const bool accept = x >= state && x <= vt.threshold_fast(k, state);
        const AbComponents parts = ab_components(vt, k, state, x);
        if (accept) {
            state = x;
            ++length;
        }
        trace.x.push_back(x);
        trace.accepted.push_back(accept);
        trace.a_parts.push_back(parts.a);
        trace.b_parts.push_back(parts.b);
        trace.diffs.push_back(parts.d());
        trace.running_max.push_back(state);
        trace.length.push_back(length);
        trace.martingale.push_back(static_cast<double>(length) + vt.value_fast(k - 1, state));
    }
    return trace;
}

}  // namespace

EpisodeTrace simulate_episode(const ValueTable& vt, RngStream rng) {
    return run_episode(vt, [&rng](int) { return rng.next_uniform(); });
}

EpisodeTrace simulate_episode(const ValueTable& vt, std::span<const double> draws) {
    if (draws.size() != static_cast<std::size_t>(vt.horizon()))
        throw std::invalid_argument("need exactly one draw per observation");
    for (double x : draws)
        if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("draws must lie in [0,1]");
    return run_episode(vt, [draws](int i) { return draws[static_cast<std::size_t>(i - 1)]; });
}

int simulate_length(const ValueTable& vt, RngStream rng, const VarianceTable* wt,
                    double* conditional_variance) {
    double state = 0.0;
    int length = 0;
    double series = 0.0;
    for (int k = vt.horizon(); k >= 1; --k) {
        if (wt != nullptr) series += conditional_second_moment(vt, *wt, k, state);
        const double x = rng.next_uniform();
        if (x >= state && x <= vt.threshold_fast(k, state)) {
            state = x;
            ++length;
        }
    }
    if (conditional_variance != nullptr) *conditional_variance = series;
    return length;
}

unsigned default_workers() {
    if (const char* env = std::getenv("MONOSEQ_THREADS"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const unsigned long parsed = std::strtoul(env, &end, 10);
        if (end != env && parsed > 0) return static_cast<unsigned>(parsed);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::int64_t count, unsigned workers,
                  const std::function<void(std::int64_t, std::int64_t)>& body) {
    if (count <= 0) return;
    if (workers == 0) workers = default_workers();
    const auto slices = static_cast<std::int64_t>(std::min<std::int64_t>(workers, count));
    if (slices <= 1) {
        body(0, count);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(slices));
    for (std::int64_t t = 0; t < slices; ++t) {
        const std::int64_t begin = count * t / slices;
        const std::int64_t end = count * (t + 1) / slices;
        pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
    for (auto& worker : pool) worker.join();
}

BatchResult simulate_batch(const ValueTable& vt, std::int64_t reps, std::uint64_t master_seed,
                           const VarianceTable* wt, unsigned workers) {
    if (reps < 1) throw std::invalid_argument("reps must be at least 1");
    if (wt != nullptr && !wt->matches(vt))
        throw std::invalid_argument("variance table built from a different value table");
    BatchResult result;
    result.lengths.resize(static_cast<std::size_t>(reps));
    if (wt != nullptr) result.conditional_variances.resize(static_cast<std::size_t>(reps));
    parallel_for(reps, workers, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t r = begin; r < end; ++r) {
            const auto idx = static_cast<std::size_t>(r);
            double series = 0.0;
            result.lengths[idx] =
                simulate_length(vt, RngStream(master_seed, static_cast<std::uint64_t>(r)), wt, &series);
            if (wt != nullptr) result.conditional_variances[idx] = series;
        }
    });
    return result;
}

std::int64_t poisson_count(double nu, RngStream& rng) {
    if (!(nu > 0.0) || !std::isfinite(nu)) throw std::invalid_argument("nu must be positive and finite");
    if (nu <= 30.0) {
        const double u = rng.next_uniform(Substream::Horizon);
        double p = std::exp(-nu);
        double cumulative = p;
        std::int64_t count = 0;
        while (u >= cumulative) {
            ++count;
            p *= nu / static_cast<double>(count);
            const double next = cumulative + p;
            if (next == cumulative) break;  // tail mass below double resolution
            cumulative = next;
        }
        return count;
    }
    std::int64_t count = 0;
    double clock = rng.next_exponential(Substream::Horizon);
    while (clock <= nu) {
        ++count;
        clock += rng.next_exponential(Substream::Horizon);
    }
    return count;
}

int simulate_poisson_horizon(const ValueTable& vt, double nu, RngStream rng) {
    const std::int64_t arrivals = poisson_count(nu, rng);
    const int n = vt.horizon();
    const int active = static_cast<int>(std::min<std::int64_t>(arrivals, n));
    double state = 0.0;
    int length = 0;
    for (int i = 1; i <= active; ++i) {
        const double x = rng.next_uniform();
        if (x >= state && x <= vt.threshold_fast(n - i + 1, state)) {
            state = x;
            ++length;
        }
    }
    return length;
}

std::vector<int> simulate_poisson_batch(const ValueTable& vt, double nu, std::int64_t reps,
                                        std::uint64_t master_seed, unsigned workers) {
    if (reps < 1) throw std::invalid_argument("reps must be at least 1");
    std::vector<int> out(static_cast<std::size_t>(reps));
    parallel_for(reps, workers, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t r = begin; r < end; ++r)
            out[static_cast<std::size_t>(r)] =
                simulate_poisson_horizon(vt, nu, RngStream(master_seed, static_cast<std::uint64_t>(r)));
    });
    return out;
}

std::size_t offline_lis(std::span<const double> draws) {
    // piles[i] holds the smallest possible tail of a non-decreasing run of length i+1.
    std::vector<double> piles;
    for (double x : draws) {
        auto it = std::upper_bound(piles.begin(), piles.end(), x);
        if (it == piles.end())
            piles.push_back(x);
        else
            *it = x;
    }
    return piles.size();
}

std::vector<int> offline_batch(int n, std::int64_t reps, std::uint64_t master_seed, unsigned workers) {
    if (n < 1 || reps < 1) throw std::invalid_argument("n and reps must be at least 1");
    std::vector<int> out(static_cast<std::size_t>(reps));
    parallel_for(reps, workers, [&](std::int64_t begin, std::int64_t end) {
        std::vector<double> draws(static_cast<std::size_t>(n));
        for (std::int64_t r = begin; r < end; ++r) {
            RngStream rng(master_seed, static_cast<std::uint64_t>(r));
            for (auto& x : draws) x = rng.next_uniform();
            out[static_cast<std::size_t>(r)] = static_cast<int>(offline_lis(draws));
        }
    });
    return out;
}

bool coupled_invariance_check(const ValueTable& vt, RngStream rng) {
    const DistributionModel exponential{Model::ExponentialMean1};
    const int n = vt.horizon();
    double uniform_state = 0.0;
    double exp_state = 0.0;
    for (int i = 1; i <= n; ++i) {
        const int k = n - i + 1;
        const double u = rng.next_uniform();

        const bool uniform_accept = u >= uniform_state && u <= vt.threshold_fast(k, uniform_state);

        // Exponential coordinates: observation, state and threshold all go
        // through the dictionary; a uniform threshold of 1 maps to +infinity.
        const double x_exp = to_exponential_coord(u);
        const double h_uniform = vt.threshold_fast(k, to_uniform_coord(exponential, exp_state));
        const double h_exp = h_uniform >= 1.0 ? std::numeric_limits<double>::infinity()
                                              : to_exponential_coord(h_uniform);
        const bool exp_accept = x_exp >= exp_state && x_exp <= h_exp;

        if (uniform_accept != exp_accept) return false;
        if (uniform_accept) {
            uniform_state = u;
            exp_state = x_exp;
        }
    }
    return true;
}

}  // namespace monoseq
