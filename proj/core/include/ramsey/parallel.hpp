#pragma once

#include <cstddef>
#include <functional>

namespace ramsey {

/// Calls body(i) for i in [0, count) on up to `threads` workers (0 means
/// hardware concurrency). Bodies must write only to slot i of their outputs.
/// If any body throws, the exception of the lowest failing index is rethrown
/// after all workers finish.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

/// Worker count actually used for `threads` (0 resolves to hardware concurrency).
std::size_t resolve_threads(std::size_t threads);

}  // namespace ramsey
