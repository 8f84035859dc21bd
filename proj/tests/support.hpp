#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace bpu::test {

inline constexpr std::uint64_t kFixedSeed = 0x5eed2024;

// BPU_TEST_SEED pins the "fresh" seed when reproducing a failure.
inline std::uint64_t fresh_seed()
{
    static const std::uint64_t seed = [] {
        if (const char* env = std::getenv("BPU_TEST_SEED"))
            return static_cast<std::uint64_t>(std::strtoull(env, nullptr, 10));
        return (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^ std::random_device{}();
    }();
    return seed;
}

inline std::vector<std::uint64_t> property_seeds()
{
    return {kFixedSeed, fresh_seed()};
}

// Calls body(rng) once per property seed; failures name the seed.
template <class Body>
void for_each_seed(Body body)
{
    for (std::uint64_t seed : property_seeds()) {
        SCOPED_TRACE("seed " + std::to_string(seed) + " (rerun with BPU_TEST_SEED)");
        std::mt19937_64 rng(seed);
        body(rng);
    }
}

}  // namespace bpu::test
