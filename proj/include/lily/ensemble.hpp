#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace lily {

/// Monte-Carlo mean with its standard error (sample std / sqrt(count)).
struct EnsembleEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  int n_realizations = 0;
};

/// Summary of per-realization values. Sums are pairwise over the index order,
/// so the result depends only on the values, not on how they were produced.
EnsembleEstimate summarize(std::span<const double> values);

/// Pairwise (cascade) summation.
double pairwise_sum(std::span<const double> values);

/// Worker count: `requested` if > 0, else LILY_THREADS, else hardware concurrency.
int resolve_threads(int requested);

/// Runs body(i) for i in [0, count) on `threads` workers. Each index runs
/// exactly once; if any body throws, the exception from the lowest index is
/// rethrown after all workers stop.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

/// Independent random stream for one (seed, realization, channel) triple.
/// Streams never depend on scheduling order.
std::mt19937_64 realization_stream(std::uint64_t master_seed, std::uint64_t realization, std::uint32_t channel);

}  // namespace lily
