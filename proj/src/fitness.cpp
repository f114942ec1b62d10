#include "cga/fitness.hpp"

#include <string>

#include "cga/errors.hpp"

namespace cga {

std::string_view to_string(FitnessKind kind) {
    return kind == FitnessKind::Cliff ? "cliff" : "onemax";
}

FitnessKind parse_fitness_kind(std::string_view name) {
    if (name == "cliff" || name == "Cliff") return FitnessKind::Cliff;
    if (name == "onemax" || name == "OneMax") return FitnessKind::OneMax;
    throw ParameterError("unknown fitness function '" + std::string(name) + "' (expected onemax or cliff)");
}

UnitationFunction UnitationFunction::one_max(int n) {
    if (n < 1) throw ParameterError("n must be positive");
    std::vector<double> values(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) values[static_cast<std::size_t>(j)] = j;
    return UnitationFunction(FitnessKind::OneMax, n, std::move(values));
}

UnitationFunction UnitationFunction::cliff(int n) {
    if (n < 3) throw ParameterError("n must be at least 3 for cliff");
    if (n % 3 != 0) throw ParameterError("n must be divisible by 3 for cliff (got " + std::to_string(n) + ")");
    const int top = 2 * n / 3;
    const double drop = n / 3 - 0.5;
    std::vector<double> values(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) values[static_cast<std::size_t>(j)] = j <= top ? j : j - drop;
    return UnitationFunction(FitnessKind::Cliff, n, std::move(values));
}

UnitationFunction UnitationFunction::make(FitnessKind kind, int n) {
    return kind == FitnessKind::Cliff ? cliff(n) : one_max(n);
}

double UnitationFunction::evaluate(const Bitstring& x) const {
    if (x.size() != n_) throw ParameterError("bitstring length does not match fitness function");
    return value(x.ones);
}

bool UnitationFunction::is_global_optimum(const Bitstring& x) const {
    if (x.size() != n_) throw ParameterError("bitstring length does not match fitness function");
    return is_optimum(x.ones);
}

Slope UnitationFunction::slope_of(int ones) const {
    if (kind_ != FitnessKind::Cliff) throw ParameterError("slope_of is only defined for cliff");
    if (ones < 0 || ones > n_) throw ParameterError("ones out of range");
    return 3 * ones <= 2 * n_ ? Slope::First : Slope::Second;
}

}  // namespace cga
