#ifndef SPX_CONFIG_HPP
#define SPX_CONFIG_HPP

// Global index build modes.
//
//   neither macro defined          : dual mode, 32-bit and 64-bit global
//                                    indices coexist and are chosen at run time
//   SPX_NO_64BIT_GLOBAL_INDICES    : 32-bit only, the 64-bit entry points are hidden
//   SPX_NO_32BIT_GLOBAL_INDICES    : 64-bit only, the 32-bit counterparts are hidden
//
// Suffix-64 accessors (gid64, min_all_gid64, num_global_rows64, ...) exist in
// every mode.

#if defined(SPX_NO_32BIT_GLOBAL_INDICES) && defined(SPX_NO_64BIT_GLOBAL_INDICES)
#error "SPX_NO_32BIT_GLOBAL_INDICES and SPX_NO_64BIT_GLOBAL_INDICES cannot both be defined"
#endif

namespace spx {

#ifndef SPX_NO_32BIT_GLOBAL_INDICES
inline constexpr bool kHaveGlobalIndices32 = true;
#else
inline constexpr bool kHaveGlobalIndices32 = false;
#endif

#ifndef SPX_NO_64BIT_GLOBAL_INDICES
inline constexpr bool kHaveGlobalIndices64 = true;
#else
inline constexpr bool kHaveGlobalIndices64 = false;
#endif

/// Human-readable name of the compiled build mode: "dual", "32", or "64".
constexpr const char* build_mode_name() {
  if constexpr (kHaveGlobalIndices32 && kHaveGlobalIndices64) {
    return "dual";
  } else if constexpr (kHaveGlobalIndices32) {
    return "32";
  } else {
    return "64";
  }
}

}  // namespace spx

#endif  // SPX_CONFIG_HPP
