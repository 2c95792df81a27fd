#ifndef CAJ_PARALLEL_HPP
#define CAJ_PARALLEL_HPP

#include <cstdint>
#include <functional>

namespace caj {

/// Resolve a requested thread count: 0 means hardware concurrency,
/// anything else is clamped to at least 1.
int resolve_threads(int requested);

/// Run body(begin, end) over [begin, end) split into contiguous chunks,
/// one per worker. Each index is processed exactly once, so outputs that
/// are written per-index are identical for any thread count.
void parallel_for(std::int64_t begin, std::int64_t end, int threads,
                  const std::function<void(std::int64_t, std::int64_t)>& body);

}  // namespace caj

#endif
