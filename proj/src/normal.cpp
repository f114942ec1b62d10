#include "cga/normal.hpp"

#include <cmath>
#include <numbers>

#include "cga/errors.hpp"

namespace cga {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343819;
constexpr double kContinuedFractionCutoff = -8.0;
constexpr int kContinuedFractionDepth = 120;

/// 1 / R(t) for the Mills ratio R(t) = (1 - Phi(t)) / phi(t), t > 0, via
/// R(t) = 1 / (t + 1/(t + 2/(t + 3/(t + ...)))) evaluated bottom-up.
double reciprocal_mills_continued_fraction(double t) noexcept {
    double v = t;
    for (int k = kContinuedFractionDepth; k >= 1; --k) v = t + k / v;
    return v;
}

}  // namespace

double normal_pdf(double x) noexcept { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double inverse_mills(double x) noexcept {
    if (x < kContinuedFractionCutoff) return reciprocal_mills_continued_fraction(-x);
    return normal_pdf(x) / normal_cdf(x);
}

double truncated_normal_mean(double mu, double sigma, double t, TruncationSide side) {
    if (!(sigma > 0.0)) throw ParameterError("sigma must be positive");
    const double z = (t - mu) / sigma;
    if (side == TruncationSide::Below) return mu - sigma * inverse_mills(z);
    // phi(z) / (1 - Phi(z)) == phi(-z) / Phi(-z)
    return mu + sigma * inverse_mills(-z);
}

}  // namespace cga
