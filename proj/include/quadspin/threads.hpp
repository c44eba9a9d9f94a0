#pragma once

namespace quadspin {

// Caps OpenMP worker threads from QUADSPIN_THREADS when set. Returns the
// thread count in effect.
int configure_threads_from_env();

}  // namespace quadspin
