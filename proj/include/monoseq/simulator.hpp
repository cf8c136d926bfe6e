#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "monoseq/rng.hpp"
#include "monoseq/trace.hpp"
#include "monoseq/value_table.hpp"
#include "monoseq/variance_table.hpp"

namespace monoseq {

/// Runs the optimal policy over the table's horizon and records the full
/// martingale trace. Acceptance intervals are closed at both ends.
EpisodeTrace simulate_episode(const ValueTable& vt, RngStream rng);

/// Same as simulate_episode but driven by explicit uniform observations.
/// Throws std::invalid_argument unless draws.size() equals the horizon.
EpisodeTrace simulate_episode(const ValueTable& vt, std::span<const double> draws);

/// Final length only. When wt is given, *conditional_variance receives
/// V = sum_j E[d_j^2 | state before j].
int simulate_length(const ValueTable& vt, RngStream rng, const VarianceTable* wt = nullptr,
                    double* conditional_variance = nullptr);

struct BatchResult {
    std::vector<int> lengths;
    std::vector<double> conditional_variances;  ///< empty unless requested
};

/// Replicate r draws from RngStream(master_seed, r). Output is ordered by
/// replicate and does not depend on the worker count.
/// Throws std::invalid_argument for reps < 1.
BatchResult simulate_batch(const ValueTable& vt, std::int64_t reps, std::uint64_t master_seed,
                           const VarianceTable* wt = nullptr, unsigned workers = 0);

/// Poisson(nu) number of arrivals; inversion for nu <= 30, counting rate-1
/// exponential gaps on [0, nu] above.
std::int64_t poisson_count(double nu, RngStream& rng);

/// The fixed-n policy facing N ~ Poisson(nu) arrivals: arrival i <= min(N, n)
/// uses h_{n-i+1}, arrivals past the n-th are rejected.
int simulate_poisson_horizon(const ValueTable& vt, double nu, RngStream rng);

std::vector<int> simulate_poisson_batch(const ValueTable& vt, double nu, std::int64_t reps,
                                        std::uint64_t master_seed, unsigned workers = 0);

/// Longest non-decreasing subsequence by patience sorting.
std::size_t offline_lis(std::span<const double> draws);

/// Offline lengths over the same observation streams simulate_batch uses.
std::vector<int> offline_batch(int n, std::int64_t reps, std::uint64_t master_seed,
                               unsigned workers = 0);

/// Runs one episode in uniform and in exponential coordinates from the same
/// uniforms and reports whether every accept/reject decision agrees.
bool coupled_invariance_check(const ValueTable& vt, RngStream rng);

/// Worker count from MONOSEQ_THREADS (0 or unset means hardware concurrency).
unsigned default_workers();

/// Calls body(begin, end) over contiguous slices of [0, count) on up to
/// `workers` threads (0 means default_workers()).
void parallel_for(std::int64_t count, unsigned workers,
                  const std::function<void(std::int64_t, std::int64_t)>& body);

}  // namespace monoseq
