#include "cga/drift.hpp"

#include <cmath>
#include <numbers>

#include "cga/errors.hpp"
#include "cga/normal.hpp"

namespace cga {

EventProbabilities event_probs(double p_right) {
    if (!(p_right >= 0.0 && p_right <= 1.0)) throw ParameterError("p_right must lie in [0, 1]");
    const double q = 1.0 - p_right;
    return {q * q, p_right * p_right, 2.0 * p_right * q};
}

DriftPrediction predicted_drift(const DriftInputs& in) {
    if (!(in.variance > 0.0)) throw ParameterError("sampling variance must be positive");
    if (!(in.update_strength > 0.0)) throw ParameterError("update strength K must be positive");
    const double sigma = std::sqrt(in.variance);
    const double z = (in.threshold - in.potential) / sigma;
    const double inv_k = 1.0 / in.update_strength;

    DriftPrediction d;
    d.p_right = normal_cdf(-z);
    const EventProbabilities ev = event_probs(d.p_right);
    d.prob_l = ev.prob_l;
    d.prob_r = ev.prob_r;
    d.prob_m = ev.prob_m;

    const double mean_below = truncated_normal_mean(in.potential, sigma, in.threshold, TruncationSide::Below);
    const double mean_above = truncated_normal_mean(in.potential, sigma, in.threshold, TruncationSide::Above);
    d.drift_m = -inv_k * (mean_above - mean_below);
    d.drift_same_slope = inv_k * std::sqrt(2.0 / std::numbers::pi * in.variance);
    d.drift_total = (d.prob_l + d.prob_r) * d.drift_same_slope + d.prob_m * d.drift_m;
    d.correction_bound = 2.0 * inv_k;
    return d;
}

DriftPrediction predicted_drift(const FrequencyModel& model, int threshold) {
    return predicted_drift({model.potential(), model.variance(), model.update_strength(),
                            static_cast<double>(threshold)});
}

}  // namespace cga
