#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cga {

/// One sampled offspring together with its cached number of one-bits.
struct Bitstring {
    std::vector<std::uint8_t> bits;
    int ones = 0;

    Bitstring() = default;
    explicit Bitstring(std::vector<std::uint8_t> b) : bits(std::move(b)) {
        for (auto v : bits) ones += v;
    }

    int size() const noexcept { return static_cast<int>(bits.size()); }
};

}  // namespace cga
