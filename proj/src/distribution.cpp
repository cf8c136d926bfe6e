#include "monoseq/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace monoseq {

std::string_view to_string(Model kind) noexcept {
    switch (kind) {
        case Model::Uniform01: return "uniform";
        case Model::ExponentialMean1: return "exponential";
    }
    return "unknown";
}

double cdf(DistributionModel model, double x) {
    if (std::isnan(x)) throw std::domain_error("cdf: NaN argument");
    switch (model.kind) {
        case Model::Uniform01:
            return std::clamp(x, 0.0, 1.0);
        case Model::ExponentialMean1:
            return x <= 0.0 ? 0.0 : -std::expm1(-x);
    }
    return 0.0;
}

double pdf(DistributionModel model, double x) {
    switch (model.kind) {
        case Model::Uniform01:
            return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0;
        case Model::ExponentialMean1:
            return x >= 0.0 ? std::exp(-x) : 0.0;
    }
    return 0.0;
}

double quantile(DistributionModel model, double u) {
    if (!(u >= 0.0 && u < 1.0))
        throw std::domain_error("quantile: probability must lie in [0,1), got " + std::to_string(u));
    switch (model.kind) {
        case Model::Uniform01: return u;
        case Model::ExponentialMean1: return -std::log1p(-u);
    }
    return 0.0;
}

double to_uniform_coord(DistributionModel model, double s) { return cdf(model, s); }

double to_exponential_coord(double u) {
    if (!(u >= 0.0 && u < 1.0))
        throw std::domain_error("to_exponential_coord: probability must lie in [0,1), got " +
                                std::to_string(u));
    return -std::log1p(-u);
}

}  // namespace monoseq
