#include "cga/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "cga/errors.hpp"

namespace cga {

double tail_bound(double lambda, double variance) {
    if (!(lambda >= 0.0)) throw ParameterError("lambda must be non-negative");
    if (!(variance > 0.0)) throw ParameterError("variance must be positive");
    return 2.0 * std::exp(-std::min(lambda * lambda / variance, lambda) / 3.0);
}

DriftTheoremExponent drift_theorem_exponent(double epsilon, double ell, double r) {
    if (!(epsilon > 0.0 && ell > 0.0 && r > 0.0)) throw ParameterError("epsilon, ell and r must be positive");
    DriftTheoremExponent out;
    const double r2 = r * r;
    out.exponent = epsilon * ell / (132.0 * r2);
    const double log_ratio = std::log(r / epsilon);
    const bool lower_ok = r2 >= 1.0;
    if (log_ratio <= 0.0) {
        out.upper_constraint_vacuous = true;
        out.condition3_ok = lower_ok;
    } else {
        out.condition3_ok = lower_ok && r2 <= epsilon * ell / (132.0 * log_ratio);
    }
    return out;
}

}  // namespace cga
