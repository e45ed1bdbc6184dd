#pragma once

#include <cstddef>
#include <functional>

namespace elroc {

// Worker count from ELROC_THREADS, else hardware concurrency (at least 1).
std::size_t default_thread_count();

// Calls body(i) for i in [0, count) on up to `threads` workers. Bodies must
// write only to their own slot of any shared output. The first exception
// thrown by a body is rethrown after all workers finish.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace elroc
