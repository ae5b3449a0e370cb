#pragma once

#include <cstdint>

namespace ptsdist
{

// Guards against combinatorial blow-up. Exceeding a cap raises CapExceeded.
struct Limits
{
    std::uint64_t max_resolutions = 1'000'000; // enumerated resolutions / distinct vectors
    std::uint64_t max_memo = 100'000;          // memo entries and achievable-set components
};

// Defaults, overridden by PTSDIST_MAX_RESOLUTIONS and PTSDIST_MAX_MEMO when set.
Limits default_limits();

} // namespace ptsdist
