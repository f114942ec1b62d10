#pragma once

namespace cga {

double normal_pdf(double x) noexcept;
/// Standard normal CDF, evaluated through erfc so that the lower tail keeps
/// full relative precision.
double normal_cdf(double x) noexcept;

/// phi(x) / Phi(x). For x < -8 the ratio is taken from the continued
/// fraction of the Mills ratio, which avoids 0/0 far in the lower tail;
/// for large negative x it behaves like -x + 1/(-x).
double inverse_mills(double x) noexcept;

enum class TruncationSide { Below, Above };

/// Mean of N(mu, sigma^2) conditioned on X <= t (Below) or X >= t (Above).
/// Throws ParameterError unless sigma > 0.
double truncated_normal_mean(double mu, double sigma, double t, TruncationSide side);

}  // namespace cga
