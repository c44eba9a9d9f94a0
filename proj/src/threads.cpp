#include "quadspin/threads.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

#include "quadspin/error.hpp"

namespace quadspin {

int configure_threads_from_env() {
  const char* raw = std::getenv("QUADSPIN_THREADS");
  if (raw == nullptr || *raw == '\0') return omp_get_max_threads();
  char* end = nullptr;
  const long n = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || n < 1) {
    throw ValidationError(std::string("QUADSPIN_THREADS must be a positive integer, got '") + raw + "'");
  }
  const long current = omp_get_max_threads();
  omp_set_num_threads(static_cast<int>(n < current ? n : current));
  return omp_get_max_threads();
}

}  // namespace quadspin
