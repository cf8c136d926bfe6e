#pragma once

#include <limits>
#include <string_view>

namespace monoseq {

/// The two driving distributions the engine knows about. Uniform01 is the
/// canonical model every table is computed in; ExponentialMean1 is reached
/// through the coordinate dictionary.
enum class Model { Uniform01, ExponentialMean1 };

struct DistributionModel {
    Model kind = Model::Uniform01;

    [[nodiscard]] double lower() const noexcept { return 0.0; }
    [[nodiscard]] double upper() const noexcept {
        return kind == Model::Uniform01 ? 1.0 : std::numeric_limits<double>::infinity();
    }
};

std::string_view to_string(Model kind) noexcept;

/// F(x). Total on the reals: values outside the support are clamped.
double cdf(DistributionModel model, double x);

/// f(x); zero outside the support.
double pdf(DistributionModel model, double x);

/// F^{-1}(u) for u in [0,1). Throws std::domain_error otherwise.
double quantile(DistributionModel model, double u);

/// u = F(s).
double to_uniform_coord(DistributionModel model, double s);

/// -log(1 - u) for u in [0,1). Throws std::domain_error for u >= 1 or u < 0.
double to_exponential_coord(double u);

}  // namespace monoseq
