#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cga/frequency_model.hpp"

namespace cga {

/// Expected number of one-bits of an offspring: sum of the frequencies.
double potential(std::span<const double> freqs) noexcept;
double potential(const FrequencyModel& model) noexcept;

/// Variance of the number of one-bits: sum of p(1-p).
double sampling_variance(std::span<const double> freqs) noexcept;
double sampling_variance(const FrequencyModel& model) noexcept;

/// Law of the number of ones in an offspring. probs[j] = P(X = j).
struct PBDistribution {
    int n = 0;
    std::vector<double> probs;

    double mean() const noexcept;
    double variance() const noexcept;
    double total() const noexcept;
};

/// Exact Poisson-binomial distribution by the O(n^2) convolution recurrence.
/// Throws ParameterError if any entry lies outside [0, 1].
PBDistribution pb_distribution(std::span<const double> freqs);

/// P(X > threshold).
double p_right(const PBDistribution& pb, int threshold);

/// E[X | X <= threshold] and E[X | X > threshold]; a side is empty when its
/// conditioning event has probability zero.
struct ConditionalMeans {
    std::optional<double> below;
    std::optional<double> above;
};

ConditionalMeans exact_conditional_means(const PBDistribution& pb, int threshold);

}  // namespace cga
