#pragma once

#include <cstdint>
#include <exception>
#include <functional>

namespace pml {

// Thread budget: PML_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
int max_threads();

// Runs f(i) for i in [0, n). Work is split across at most max_threads()
// threads; f must write only to slot i of its output so results do not
// depend on the thread count. The lowest-index exception is rethrown.
void parallel_for_index(std::int64_t n, const std::function<void(std::int64_t)>& f);

}  // namespace pml
