#pragma once

namespace lforge {

// Worker cap: min(omp_get_max_threads(), $LFORGE_THREADS if set).
// Call once at program start; safe to call again.
void apply_thread_cap();

int worker_count();

}  // namespace lforge
