#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qlim {

// Execution policy for grid-shaped work. Parallel uses OpenMP when compiled
// in; Serial always runs the same code path single-threaded, so the two are
// comparable in tests and benchmarks.
enum class Exec { Serial, Parallel };

// Number of threads Parallel would use (1 when OpenMP is absent).
inline int concurrency() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace qlim
