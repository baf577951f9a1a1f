#pragma once

namespace disten {

inline constexpr const char* library_version = "1.0.0";

// Bumped whenever the histogram backends or the cache layout change meaning;
// part of the cache key so stale files are recomputed, never reused silently.
inline constexpr unsigned histogram_cache_version = 1;

} // namespace disten
