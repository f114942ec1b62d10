#pragma once

namespace cga {

/// Upper bound on P(|P_{t+1} - P_t| >= lambda / K) given sampling variance V:
/// 2 exp(-(1/3) min(lambda^2 / V, lambda)). The value may exceed 1.
double tail_bound(double lambda, double variance);

struct DriftTheoremExponent {
    /// epsilon * ell / (132 r^2)
    double exponent = 0.0;
    /// 1 <= r^2 <= epsilon * ell / (132 log(r / epsilon)).
    bool condition3_ok = false;
    /// Set when log(r / epsilon) <= 0: the upper constraint on r^2 then
    /// imposes nothing and only r^2 >= 1 is checked.
    bool upper_constraint_vacuous = false;
};

/// Exponent of the negative-drift-with-scaling hitting-time bound and its
/// third condition. All arguments must be positive.
DriftTheoremExponent drift_theorem_exponent(double epsilon, double ell, double r);

}  // namespace cga
