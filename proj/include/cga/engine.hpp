#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <type_traits>
#include <vector>

#include "cga/bitstring.hpp"
#include "cga/errors.hpp"
#include "cga/frequency_model.hpp"
#include "cga/rng.hpp"

namespace cga {

/// Anything the engine can optimize: a function of unitation on n bits
/// with a known optimum level.
template <class F>
concept UnitationFitness = requires(const F& f, int ones) {
    { f.n() } -> std::convertible_to<int>;
    { f.value(ones) } -> std::convertible_to<double>;
    { f.is_optimum(ones) } -> std::convertible_to<bool>;
};

/// Location of the two offspring relative to the cliff at 2n/3:
/// both on the first slope (L), both on the second (R), or one each (M).
enum class EventClass : std::uint8_t { L, R, M };

char to_char(EventClass e) noexcept;

/// True iff `ones` exceeds 2n/3, i.e. lies on the second slope.
constexpr bool above_cliff(int ones, int n) noexcept { return 3 * ones > 2 * n; }

constexpr EventClass classify(int ones_x, int ones_y, int n) noexcept {
    const bool a = above_cliff(ones_x, n);
    const bool b = above_cliff(ones_y, n);
    if (a != b) return EventClass::M;
    return a ? EventClass::R : EventClass::L;
}

struct StepRecord {
    std::uint64_t t = 0;
    double potential_before = 0.0;
    double potential_after = 0.0;
    double variance_before = 0.0;
    double variance_after = 0.0;
    int ones_x = 0;  // reinforced offspring (after the swap)
    int ones_y = 0;
    EventClass event_class = EventClass::L;
    double delta_potential = 0.0;
    bool optimum_sampled = false;
    /// 0 if neither offspring was optimal, otherwise 1 or 2 for the first
    /// optimal offspring in sampling order.
    int optimum_offspring = 0;
    int evaluations_used = 2;
};

struct RunResult {
    std::uint64_t evaluations = 0;
    bool censored = false;
    std::uint64_t iterations = 0;
    std::uint64_t seed = 0;
    double final_potential = 0.0;
    double final_variance = 0.0;
};

/// Sole mutator of FrequencyModel state.
class ModelUpdater {
public:
    /// Moves each frequency by +1/K where the reinforced string has a one and
    /// the other a zero, by -1/K in the opposite case, then clamps into the
    /// borders. Returns the change in potential.
    static double reinforce(FrequencyModel& model, const Bitstring& winner, const Bitstring& loser) noexcept {
        const auto n = static_cast<std::size_t>(model.n_);
        double d_potential = 0.0;
        double d_variance = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const int diff = int{winner.bits[i]} - int{loser.bits[i]};
            if (diff == 0) continue;
            double& p = model.freqs_[i];
            const double old = p;
            const double moved = diff > 0 ? old + model.step_ : old - model.step_;
            p = std::clamp(moved, model.lower_, model.upper_);
            d_potential += p - old;
            d_variance += p * (1.0 - p) - old * (1.0 - old);
        }
        if (++model.updates_since_resync_ >= FrequencyModel::kResyncInterval) {
            model.resync();
        } else {
            model.potential_ += d_potential;
            model.variance_ += d_variance;
        }
        return d_potential;
    }
};

/// Fills `out` with a fresh offspring: bit i is one with probability p_i.
inline void sample_into(const FrequencyModel& model, Rng& rng, Bitstring& out) {
    const auto freqs = model.frequencies();
    out.bits.resize(freqs.size());
    int ones = 0;
    for (std::size_t i = 0; i < freqs.size(); ++i) {
        const std::uint8_t bit = uniform01(rng) < freqs[i] ? 1 : 0;
        out.bits[i] = bit;
        ones += bit;
    }
    out.ones = ones;
}

inline Bitstring sample(const FrequencyModel& model, Rng& rng) {
    Bitstring x;
    sample_into(model, rng, x);
    return x;
}

/// Applies one cGA update to already sampled offspring x, y given in
/// sampling order. On ties x is reinforced.
template <UnitationFitness F>
StepRecord apply_update(FrequencyModel& model, const F& f, const Bitstring& x, const Bitstring& y,
                        std::uint64_t t = 0) {
    if (x.size() != model.n() || y.size() != model.n() || f.n() != model.n()) {
        throw ParameterError("offspring length, fitness size and model size must agree");
    }
    StepRecord rec;
    rec.t = t;
    rec.potential_before = model.potential();
    rec.variance_before = model.variance();
    if (f.is_optimum(x.ones)) {
        rec.optimum_offspring = 1;
    } else if (f.is_optimum(y.ones)) {
        rec.optimum_offspring = 2;
    }
    rec.optimum_sampled = rec.optimum_offspring != 0;

    const bool swap = f.value(x.ones) < f.value(y.ones);
    const Bitstring& winner = swap ? y : x;
    const Bitstring& loser = swap ? x : y;
    rec.ones_x = winner.ones;
    rec.ones_y = loser.ones;
    rec.event_class = classify(winner.ones, loser.ones, model.n());

    rec.delta_potential = ModelUpdater::reinforce(model, winner, loser);
    rec.potential_after = model.potential();
    rec.variance_after = model.variance();
    return rec;
}

/// Reusable offspring buffers so that long runs do not allocate per step.
struct StepWorkspace {
    Bitstring x;
    Bitstring y;
};

template <UnitationFitness F>
StepRecord step(FrequencyModel& model, const F& f, Rng& rng, StepWorkspace& ws, std::uint64_t t = 0) {
    sample_into(model, rng, ws.x);
    sample_into(model, rng, ws.y);
    return apply_update(model, f, ws.x, ws.y, t);
}

template <UnitationFitness F>
StepRecord step(FrequencyModel& model, const F& f, Rng& rng, std::uint64_t t = 0) {
    StepWorkspace ws;
    return step(model, f, rng, ws, t);
}

/// Observer type for run() that ignores every step.
struct NoObserver {
    void operator()(const StepRecord&) const noexcept {}
};

/// Runs the cGA until an offspring is the global optimum or the evaluation
/// budget is spent. Evaluations are counted per offspring, so finding the
/// optimum with the first offspring of iteration t gives 2t + 1. Sampling
/// stops as soon as the optimum appears, so the final iteration performs no
/// update. `on_step` receives the record of every completed update.
template <UnitationFitness F, class Observer = NoObserver>
RunResult run(FrequencyModel& model, const F& f, Rng& rng, std::uint64_t max_evaluations,
              Observer&& on_step = {}) {
    if (max_evaluations < 2) throw ParameterError("max_evaluations must be at least 2");
    RunResult result;
    StepWorkspace ws;
    std::uint64_t evaluations = 0;
    std::uint64_t iterations = 0;
    bool found = false;
    while (evaluations < max_evaluations) {
        ++iterations;
        sample_into(model, rng, ws.x);
        ++evaluations;
        if (f.is_optimum(ws.x.ones)) {
            found = true;
            break;
        }
        if (evaluations == max_evaluations) break;
        sample_into(model, rng, ws.y);
        ++evaluations;
        if (f.is_optimum(ws.y.ones)) {
            found = true;
            break;
        }
        if constexpr (std::is_same_v<std::remove_cvref_t<Observer>, NoObserver>) {
            const bool swap = f.value(ws.x.ones) < f.value(ws.y.ones);
            ModelUpdater::reinforce(model, swap ? ws.y : ws.x, swap ? ws.x : ws.y);
        } else {
            on_step(apply_update(model, f, ws.x, ws.y, iterations - 1));
        }
    }
    result.evaluations = evaluations;
    result.censored = !found;
    result.iterations = iterations;
    result.final_potential = model.potential();
    result.final_variance = model.variance();
    return result;
}

struct TraceOptions {
    std::uint64_t max_iterations = 0;
    std::uint64_t record_every = 1;
    /// Stop after the step in which the optimum was first sampled.
    bool stop_at_optimum = true;
};

/// Executes up to max_iterations steps and keeps every record_every-th
/// StepRecord (those with t % record_every == 0).
template <UnitationFitness F>
std::vector<StepRecord> trace_run(FrequencyModel& model, const F& f, Rng& rng, const TraceOptions& opts) {
    if (opts.record_every < 1) throw ParameterError("record_every must be at least 1");
    std::vector<StepRecord> records;
    records.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(
        opts.max_iterations / opts.record_every + 1, std::uint64_t{1} << 20)));
    StepWorkspace ws;
    for (std::uint64_t t = 0; t < opts.max_iterations; ++t) {
        StepRecord rec = step(model, f, rng, ws, t);
        const bool stop = opts.stop_at_optimum && rec.optimum_sampled;
        if (t % opts.record_every == 0) records.push_back(rec);
        if (stop) break;
    }
    return records;
}

}  // namespace cga
