#include "cga/poisson_binomial.hpp"

#include <cmath>
#include <string>

#include "cga/errors.hpp"

namespace cga {

namespace {

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double v) noexcept {
        const double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

void check_threshold(const PBDistribution& pb, int threshold) {
    if (threshold < 0 || threshold > pb.n) {
        throw ParameterError("threshold " + std::to_string(threshold) + " outside [0, n]");
    }
}

}  // namespace

double potential(std::span<const double> freqs) noexcept {
    CompensatedSum s;
    for (double p : freqs) s.add(p);
    return s.value();
}

double potential(const FrequencyModel& model) noexcept { return potential(model.frequencies()); }

double sampling_variance(std::span<const double> freqs) noexcept {
    CompensatedSum s;
    for (double p : freqs) s.add(p * (1.0 - p));
    return s.value();
}

double sampling_variance(const FrequencyModel& model) noexcept { return sampling_variance(model.frequencies()); }

double PBDistribution::mean() const noexcept {
    CompensatedSum s;
    for (int j = 1; j <= n; ++j) s.add(j * probs[static_cast<std::size_t>(j)]);
    return s.value();
}

double PBDistribution::variance() const noexcept {
    const double mu = mean();
    CompensatedSum s;
    for (int j = 0; j <= n; ++j) {
        const double d = j - mu;
        s.add(d * d * probs[static_cast<std::size_t>(j)]);
    }
    return s.value();
}

double PBDistribution::total() const noexcept {
    CompensatedSum s;
    for (double q : probs) s.add(q);
    return s.value();
}

PBDistribution pb_distribution(std::span<const double> freqs) {
    for (double p : freqs) {
        if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("frequency " + std::to_string(p) + " outside [0, 1]");
    }
    PBDistribution pb;
    pb.n = static_cast<int>(freqs.size());
    pb.probs.assign(freqs.size() + 1, 0.0);
    auto& q = pb.probs;
    q[0] = 1.0;
    // After processing k bits, q[0..k] is the law of the first k bits.
    for (std::size_t k = 0; k < freqs.size(); ++k) {
        const double p = freqs[k];
        const double r = 1.0 - p;
        q[k + 1] = q[k] * p;
        for (std::size_t j = k; j >= 1; --j) q[j] = q[j] * r + q[j - 1] * p;
        q[0] *= r;
    }
    return pb;
}

double p_right(const PBDistribution& pb, int threshold) {
    check_threshold(pb, threshold);
    CompensatedSum s;
    for (int j = pb.n; j > threshold; --j) s.add(pb.probs[static_cast<std::size_t>(j)]);
    return s.value();
}

ConditionalMeans exact_conditional_means(const PBDistribution& pb, int threshold) {
    check_threshold(pb, threshold);
    CompensatedSum mass_below, moment_below, mass_above, moment_above;
    for (int j = 0; j <= pb.n; ++j) {
        const double q = pb.probs[static_cast<std::size_t>(j)];
        if (j <= threshold) {
            mass_below.add(q);
            moment_below.add(j * q);
        } else {
            mass_above.add(q);
            moment_above.add(j * q);
        }
    }
    ConditionalMeans out;
    if (mass_below.value() > 0.0) out.below = moment_below.value() / mass_below.value();
    if (mass_above.value() > 0.0) out.above = moment_above.value() / mass_above.value();
    return out;
}

}  // namespace cga
