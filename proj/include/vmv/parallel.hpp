#pragma once
#include <cstddef>
#include <functional>

namespace vmv {

// Worker cap for the data-parallel loops (raw sums, pair counting, tuple
// hashing).  Every parallel loop in the kit folds per-block results in
// block order, so results never depend on this setting.
int max_threads();
void set_max_threads(int n);  // n >= 1

// Invokes fn(b) for every b in [0, nblocks), on up to max_threads()
// workers.  Blocks may run in any order; callers store per-block results
// and fold them deterministically afterwards.
void run_blocks(std::size_t nblocks, const std::function<void(std::size_t)>& fn);

}  // namespace vmv
