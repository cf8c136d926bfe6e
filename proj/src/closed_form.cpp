#include <cmath>
#include <stdexcept>
#include <string>

#include "monoseq/value_table.hpp"

namespace monoseq {

namespace {

double v2(double s) { return 1.5 - s - 0.5 * s * s; }

// Antiderivative of 1 + v_2(x).
double one_plus_v2_primitive(double x) { return 2.5 * x - 0.5 * x * x - x * x * x / 6.0; }

}  // namespace

double small_n_oracle(int k, double s) {
    if (!(s >= 0.0 && s <= 1.0))
        throw std::invalid_argument("small_n_oracle: state outside [0,1]");
    switch (k) {
        case 1:
            return 1.0 - s;
        case 2:
            return v2(s);
        case 3: {
            // v_2(s) > 1 exactly below sqrt(2) - 1; there the threshold solves
            // v_2(s) = 1 + v_2(h), a quadratic in h.
            const double critical = std::sqrt(2.0) - 1.0;
            const double h = s < critical ? -1.0 + std::sqrt(3.0 + 2.0 * s + s * s) : 1.0;
            return (1.0 - h + s) * v2(s) + one_plus_v2_primitive(h) - one_plus_v2_primitive(s);
        }
        default:
            throw std::invalid_argument("small_n_oracle covers k = 1..3, got " + std::to_string(k));
    }
}

}  // namespace monoseq
