#include "cga/frequency_model.hpp"

#include <cmath>
#include <string>

#include "cga/errors.hpp"

namespace cga {

namespace {

void check_parameters(int n, double update_strength) {
    if (n < 2) throw ParameterError("n must be at least 2 (got " + std::to_string(n) + ")");
    if (!(update_strength > 0.0) || !std::isfinite(update_strength)) {
        throw ParameterError("update strength K must be a positive finite number");
    }
}

}  // namespace

FrequencyModel::FrequencyModel(int n, double update_strength)
    : n_(n), k_(update_strength), step_(0.0), lower_(0.0), upper_(0.0) {
    check_parameters(n, update_strength);
    step_ = 1.0 / k_;
    lower_ = 1.0 / n_;
    upper_ = 1.0 - 1.0 / n_;
    freqs_.assign(static_cast<std::size_t>(n_), 0.5);
    resync();
}

FrequencyModel FrequencyModel::from_frequencies(std::vector<double> freqs, double update_strength) {
    FrequencyModel model(static_cast<int>(freqs.size()), update_strength);
    for (double p : freqs) {
        if (!(p >= model.lower_ && p <= model.upper_)) {
            throw ParameterError("frequency " + std::to_string(p) + " outside borders [1/n, 1-1/n]");
        }
    }
    model.freqs_ = std::move(freqs);
    model.resync();
    return model;
}

void FrequencyModel::resync() noexcept {
    double p_sum = 0.0;
    double v_sum = 0.0;
    for (double p : freqs_) {
        p_sum += p;
        v_sum += p * (1.0 - p);
    }
    potential_ = p_sum;
    variance_ = v_sum;
    updates_since_resync_ = 0;
}

}  // namespace cga
