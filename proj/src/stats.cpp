#include "monoseq/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace monoseq {

namespace {

double quarter_scale(int n) {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    return std::pow(2.0 * n, 0.25);
}

}  // namespace

double clt_statistic(double length, int n) {
    return clt_statistic_centered(length, n, std::sqrt(2.0 * n));
}

double clt_statistic_centered(double length, int n, double centre) {
    return std::numbers::sqrt3 * (length - centre) / quarter_scale(n);
}

double clt_inverse(double z, int n) {
    return std::sqrt(2.0 * n) + z * quarter_scale(n) / std::numbers::sqrt3;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile needs p in (0,1)");
    // Acklam's rational approximation, relative error about 1.15e-9.
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double low = 0.02425;
    double x;
    if (p < low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double e = normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

double ks_to_standard_normal(std::span<const double> zs) {
    if (zs.empty()) throw std::invalid_argument("KS distance of an empty sample");
    std::vector<double> sorted(zs.begin(), zs.end());
    std::sort(sorted.begin(), sorted.end());
    const auto m = static_cast<double>(sorted.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double phi = normal_cdf(sorted[i]);
        const double above = static_cast<double>(i + 1) / m - phi;
        const double below = phi - static_cast<double>(i) / m;
        worst = std::max({worst, above, below});
    }
    return worst;
}

double Histogram::lower_edge(std::size_t i) const {
    if (i == 0) return -std::numeric_limits<double>::infinity();
    return lo + (hi - lo) * static_cast<double>(i - 1) / bins;
}

double Histogram::upper_edge(std::size_t i) const {
    if (i + 1 >= counts.size()) return std::numeric_limits<double>::infinity();
    return lo + (hi - lo) * static_cast<double>(i) / bins;
}

std::int64_t Histogram::total() const {
    std::int64_t sum = 0;
    for (auto c : counts) sum += c;
    return sum;
}

Histogram make_histogram(std::span<const double> zs, double lo, double hi, int bins) {
    if (bins < 1 || !(hi > lo)) throw std::invalid_argument("bad histogram range");
    Histogram hist{lo, hi, bins, std::vector<std::int64_t>(static_cast<std::size_t>(bins) + 2, 0)};
    const double width = (hi - lo) / bins;
    for (double z : zs) {
        std::size_t slot;
        if (z < lo) {
            slot = 0;
        } else if (z >= hi) {
            slot = static_cast<std::size_t>(bins) + 1;
        } else {
            const auto bin = std::min(static_cast<int>((z - lo) / width), bins - 1);
            slot = static_cast<std::size_t>(bin) + 1;
        }
        ++hist.counts[slot];
    }
    return hist;
}

Moments sample_moments(std::span<const double> xs) {
    if (xs.size() < 2) throw std::invalid_argument("need at least two samples");
    long double sum = 0.0L;
    for (double x : xs) sum += x;
    const long double mean = sum / static_cast<long double>(xs.size());
    long double squares = 0.0L;
    for (double x : xs) squares += (x - mean) * (x - mean);
    return {static_cast<double>(mean),
            static_cast<double>(squares / static_cast<long double>(xs.size() - 1))};
}

double ks_with_centre(std::span<const int> samples, int n, double centre) {
    std::vector<double> zs;
    zs.reserve(samples.size());
    for (int length : samples) zs.push_back(clt_statistic_centered(length, n, centre));
    return ks_to_standard_normal(zs);
}

MonteCarloSummary summarize(std::span<const int> samples, int n) {
    if (samples.size() < 2) throw std::invalid_argument("summarize needs at least two samples");
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    std::vector<double> as_real(samples.begin(), samples.end());
    // Sorting first makes the floating-point sums independent of input order.
    std::sort(as_real.begin(), as_real.end());
    const Moments moments = sample_moments(as_real);

    std::vector<double> zs;
    zs.reserve(as_real.size());
    for (double length : as_real) zs.push_back(clt_statistic(length, n));

    MonteCarloSummary out;
    out.n = n;
    out.reps = static_cast<std::int64_t>(samples.size());
    out.mean = moments.mean;
    out.variance = moments.variance;
    out.stderr_mean = std::sqrt(moments.variance / static_cast<double>(samples.size()));
    out.ks_distance = ks_to_standard_normal(zs);
    out.histogram = make_histogram(zs);
    return out;
}

}  // namespace monoseq
