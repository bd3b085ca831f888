#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace mmrclust::detail {

// The standard distributions are implementation-defined; these mappings are
// not, so seeded results are identical on every platform.

inline double uniform01(std::mt19937_64& gen)
{
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline std::size_t uniform_index(std::mt19937_64& gen, std::size_t n)
{
    const auto idx = static_cast<std::size_t>(uniform01(gen) * static_cast<double>(n));
    return idx < n ? idx : n - 1;
}

}  // namespace mmrclust::detail
