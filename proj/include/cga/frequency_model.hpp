#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cga {

/// The cGA's probabilistic model: one marginal frequency per bit, kept in
/// [1/n, 1 - 1/n], plus the update strength K.
///
/// Potential (sum of frequencies) and sampling variance (sum of p(1-p)) are
/// maintained incrementally by the engine and recomputed from scratch every
/// kResyncInterval updates to discard accumulated rounding.
class FrequencyModel {
public:
    static constexpr std::uint64_t kResyncInterval = std::uint64_t{1} << 16;

    /// Fresh model with every frequency at 1/2. Throws ParameterError unless
    /// n >= 2 and K > 0.
    FrequencyModel(int n, double update_strength);

    /// Model in an arbitrary state. Every frequency must lie within the
    /// borders [1/n, 1 - 1/n].
    static FrequencyModel from_frequencies(std::vector<double> freqs, double update_strength);

    int n() const noexcept { return n_; }
    double update_strength() const noexcept { return k_; }
    double step_size() const noexcept { return step_; }
    double lower_border() const noexcept { return lower_; }
    double upper_border() const noexcept { return upper_; }

    std::span<const double> frequencies() const noexcept { return freqs_; }
    double frequency(int i) const { return freqs_[static_cast<std::size_t>(i)]; }

    double potential() const noexcept { return potential_; }
    double variance() const noexcept { return variance_; }

    /// Recomputes potential and variance from the stored frequencies.
    void resync() noexcept;

private:
    friend class ModelUpdater;

    int n_;
    double k_;
    double step_;
    double lower_;
    double upper_;
    std::vector<double> freqs_;
    double potential_ = 0.0;
    double variance_ = 0.0;
    std::uint64_t updates_since_resync_ = 0;
};

}  // namespace cga
