#include <doctest.h>

#include "cga/errors.hpp"
#include "cga/fitness.hpp"

using namespace cga;

namespace {

Bitstring with_ones(int n, int ones) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < ones; ++i) bits[static_cast<std::size_t>(i)] = 1;
    return Bitstring(std::move(bits));
}

}  // namespace

TEST_CASE("cliff values at n = 15") {
    const auto f = UnitationFunction::cliff(15);
    CHECK(f.evaluate(with_ones(15, 10)) == 10.0);
    CHECK(f.evaluate(with_ones(15, 11)) == 6.5);
    CHECK(f.evaluate(with_ones(15, 15)) == 10.5);
    CHECK(f.values().size() == 16);
}

TEST_CASE("onemax is the identity on the count") {
    const auto f = UnitationFunction::one_max(8);
    CHECK(f.evaluate(with_ones(8, 3)) == 3.0);
    for (int j = 0; j <= 8; ++j) CHECK(f.value(j) == j);
}

TEST_CASE("global optimum is the all-ones string") {
    const auto cliff = UnitationFunction::cliff(15);
    CHECK(cliff.is_global_optimum(with_ones(15, 15)));
    CHECK_FALSE(cliff.is_global_optimum(with_ones(15, 10)));
    const auto om = UnitationFunction::one_max(3);
    CHECK_FALSE(om.is_global_optimum(Bitstring({1, 1, 0})));
    CHECK(om.is_global_optimum(Bitstring({1, 1, 1})));
}

TEST_CASE("slopes") {
    CHECK(UnitationFunction::cliff(15).slope_of(10) == Slope::First);
    CHECK(UnitationFunction::cliff(15).slope_of(11) == Slope::Second);
    CHECK(UnitationFunction::cliff(18).slope_of(0) == Slope::First);
    CHECK_THROWS_AS(UnitationFunction::one_max(15).slope_of(3), ParameterError);
    CHECK_THROWS_AS(UnitationFunction::cliff(15).slope_of(16), ParameterError);
}

TEST_CASE("cliff shape holds exhaustively") {
    for (int n = 3; n <= 99; n += 3) {
        CAPTURE(n);
        const auto f = UnitationFunction::cliff(n);
        const auto& v = f.values();
        const int top = 2 * n / 3;
        CHECK(v[static_cast<std::size_t>(n)] == 2.0 * n / 3.0 + 0.5);
        for (int k = top + 1; k < n; ++k) CHECK(v[static_cast<std::size_t>(top)] > v[static_cast<std::size_t>(k)]);
        for (int j = 1; j <= top; ++j) CHECK(v[static_cast<std::size_t>(j)] > v[static_cast<std::size_t>(j - 1)]);
        for (int j = top + 2; j <= n; ++j) CHECK(v[static_cast<std::size_t>(j)] > v[static_cast<std::size_t>(j - 1)]);
        // unique maximizer at n
        for (int j = 0; j < n; ++j) CHECK(v[static_cast<std::size_t>(j)] < v[static_cast<std::size_t>(n)]);
    }
}

TEST_CASE("invalid sizes are rejected") {
    CHECK_THROWS_WITH_AS(UnitationFunction::cliff(16), doctest::Contains("divisible by 3"), ParameterError);
    CHECK_THROWS_AS(UnitationFunction::one_max(0), ParameterError);
    const auto f = UnitationFunction::cliff(15);
    CHECK_THROWS_AS(f.evaluate(with_ones(14, 3)), ParameterError);
}

TEST_CASE("fitness names") {
    CHECK(parse_fitness_kind("cliff") == FitnessKind::Cliff);
    CHECK(parse_fitness_kind("onemax") == FitnessKind::OneMax);
    CHECK_THROWS_AS(parse_fitness_kind("jump"), ParameterError);
}
