#pragma once

#include <cstddef>
#include <functional>

namespace topicfilter {

/// Runs body(i) for i in [0, count) on up to `workers` threads.
///
/// Items are handed out in contiguous blocks; body must only write to
/// per-item state so results do not depend on scheduling. workers <= 1
/// runs inline on the calling thread.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body);

/// Number of hardware threads, at least 1.
unsigned hardware_workers() noexcept;

}  // namespace topicfilter
