#pragma once

#include <cstddef>
#include <functional>

namespace mldlab {

// Runs fn(0..count-1) on up to `jobs` worker threads.  Work items must be
// independent; callers that collect results write them into preallocated
// slots indexed by the item, which keeps aggregate output identical for any
// job count.  jobs <= 1 runs inline.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

// Default worker count: MLDLAB_JOBS when set, otherwise 1.
int default_jobs();

}  // namespace mldlab
