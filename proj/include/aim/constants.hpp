#pragma once

// CODATA 2018 values, 12 significant digits (exact where the SI defines them).

namespace aim::constants {

inline constexpr const char* kPlanck = "6.62607015e-34";                 // J s (exact)
inline constexpr const char* kSpeedOfLight = "299792458";                // m/s (exact)
inline constexpr const char* kAtomicMassUnit = "1.66053906660e-27";      // kg
inline constexpr const char* kAngstrom = "1e-10";                        // m

}  // namespace aim::constants
