#pragma once

#include <string_view>
#include <vector>

#include "cga/bitstring.hpp"

namespace cga {

enum class FitnessKind { OneMax, Cliff };

enum class Slope { First, Second };

std::string_view to_string(FitnessKind kind);
FitnessKind parse_fitness_kind(std::string_view name);

/// A function of unitation: the fitness of x depends only on |x|_1.
/// The table values()[j] holds the fitness of any string with j ones.
class UnitationFunction {
public:
    static UnitationFunction one_max(int n);
    /// Requires n divisible by 3 so that the cliff sits at an integer.
    static UnitationFunction cliff(int n);
    static UnitationFunction make(FitnessKind kind, int n);

    FitnessKind kind() const noexcept { return kind_; }
    int n() const noexcept { return n_; }
    const std::vector<double>& values() const noexcept { return values_; }

    double value(int ones) const { return values_[static_cast<std::size_t>(ones)]; }
    bool is_optimum(int ones) const noexcept { return ones == n_; }

    double evaluate(const Bitstring& x) const;
    bool is_global_optimum(const Bitstring& x) const;

    /// Position of a unitation level relative to the cliff at 2n/3.
    /// Only defined for Cliff.
    Slope slope_of(int ones) const;

private:
    UnitationFunction(FitnessKind kind, int n, std::vector<double> values)
        : kind_(kind), n_(n), values_(std::move(values)) {}

    FitnessKind kind_;
    int n_;
    std::vector<double> values_;
};

}  // namespace cga
