#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "cga/engine.hpp"
#include "cga/frequency_model.hpp"

namespace cga {

struct EventProbabilities {
    double prob_l = 0.0;
    double prob_r = 0.0;
    double prob_m = 0.0;
};

/// Probabilities of the events L, R and M when each offspring independently
/// lands on the second slope with probability p_right.
EventProbabilities event_probs(double p_right);

/// Normal-approximation drift of the potential near the cliff.
struct DriftPrediction {
    double p_right = 0.0;
    double prob_l = 0.0;
    double prob_r = 0.0;
    double prob_m = 0.0;
    double drift_m = 0.0;
    /// Upper estimate used for both L and R.
    double drift_same_slope = 0.0;
    double drift_total = 0.0;
    /// Bound on the border effect that drift_total leaves out.
    double correction_bound = 0.0;
};

struct DriftInputs {
    double potential = 0.0;
    double variance = 0.0;
    double update_strength = 1.0;
    double threshold = 0.0;
};

/// The offspring's one-count is approximated by N(P, V). With
/// p_R = 1 - Phi((threshold - P) / sqrt V):
///   drift_M          = -(E[X | X > thr] - E[X | X <= thr]) / K
///   drift_same_slope = sqrt(2V/pi) / K
///   drift_total      = (p_L + p_R) drift_same_slope + p_M drift_M
/// Throws ParameterError if V <= 0 or K <= 0.
DriftPrediction predicted_drift(const DriftInputs& in);
DriftPrediction predicted_drift(const FrequencyModel& model, int threshold);

struct EventMean {
    std::uint64_t count = 0;
    double mean = 0.0;
};

struct EmpiricalDrift {
    std::uint64_t samples = 0;
    double mean = 0.0;
    double stderr_mean = 0.0;
    /// Indexed by EventClass (L, R, M).
    std::array<EventMean, 3> per_event{};

    double event_fraction(EventClass e) const noexcept {
        return samples == 0 ? 0.0
                            : static_cast<double>(per_event[static_cast<std::size_t>(e)].count) /
                                  static_cast<double>(samples);
    }
};

/// Monte-Carlo estimate of the one-step potential change: `samples`
/// independent cGA steps, each from a copy of `model`. The input is never
/// modified. Event classes are taken relative to 2n/3.
template <UnitationFitness F>
EmpiricalDrift empirical_drift(const FrequencyModel& model, const F& f, std::uint64_t samples, Rng& rng) {
    if (samples < 1) throw ParameterError("samples must be at least 1");
    EmpiricalDrift out;
    out.samples = samples;
    FrequencyModel scratch = model;
    StepWorkspace ws;
    std::array<double, 3> event_sum{};
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        scratch = model;
        const StepRecord rec = step(scratch, f, rng, ws, s);
        const double d = rec.delta_potential;
        sum += d;
        sum_sq += d * d;
        const auto e = static_cast<std::size_t>(rec.event_class);
        event_sum[e] += d;
        ++out.per_event[e].count;
    }
    const double nsamp = static_cast<double>(samples);
    out.mean = sum / nsamp;
    if (samples > 1) {
        const double var = std::max(0.0, (sum_sq - nsamp * out.mean * out.mean) / (nsamp - 1.0));
        out.stderr_mean = std::sqrt(var / nsamp);
    }
    for (std::size_t e = 0; e < 3; ++e) {
        if (out.per_event[e].count > 0) {
            out.per_event[e].mean = event_sum[e] / static_cast<double>(out.per_event[e].count);
        }
    }
    return out;
}

}  // namespace cga
