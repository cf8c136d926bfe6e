#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace monoseq {

/// z = sqrt(3) (L - sqrt(2n)) / (2n)^{1/4}.
double clt_statistic(double length, int n);

/// Inverse of clt_statistic in L for fixed n.
double clt_inverse(double z, int n);

/// Affine normalisation with an arbitrary centre: sqrt(3) (L - centre) / (2n)^{1/4}.
double clt_statistic_centered(double length, int n, double centre);

/// Standard normal CDF.
double normal_cdf(double z);

/// Standard normal quantile for p in (0,1): rational start refined by one
/// Halley step against normal_cdf.
double normal_quantile(double p);

/// sup |F_m - Phi| over the sample's step points. Throws on empty input.
double ks_to_standard_normal(std::span<const double> zs);

/// Fixed-width bins on [lo, hi) plus one underflow bin in front and one
/// overflow bin at the back; counts.size() == bins + 2.
struct Histogram {
    double lo = -4.0;
    double hi = 4.0;
    int bins = 61;
    std::vector<std::int64_t> counts;

    /// Lower/upper edge of bin i in counts (infinite for the overflow bins).
    [[nodiscard]] double lower_edge(std::size_t i) const;
    [[nodiscard]] double upper_edge(std::size_t i) const;
    [[nodiscard]] std::int64_t total() const;
};

Histogram make_histogram(std::span<const double> zs, double lo = -4.0, double hi = 4.0, int bins = 61);

struct MonteCarloSummary {
    int n = 0;
    std::int64_t reps = 0;
    double mean = 0.0;
    double variance = 0.0;  ///< unbiased
    double stderr_mean = 0.0;
    double ks_distance = 0.0;  ///< z-samples centred at sqrt(2n)
    Histogram histogram;
};

/// Throws std::invalid_argument for fewer than two samples or n < 1.
MonteCarloSummary summarize(std::span<const int> samples, int n);

/// KS distance of the lengths normalised around `centre` instead of sqrt(2n).
double ks_with_centre(std::span<const int> samples, int n, double centre);

/// Sample mean and unbiased variance of arbitrary reals (two-pass).
struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};
Moments sample_moments(std::span<const double> xs);

}  // namespace monoseq
