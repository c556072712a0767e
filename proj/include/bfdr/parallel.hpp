#pragma once

// OpenMP plumbing. Kernels either run the serial reference loop or the
// OpenMP loop; both visit the same indices and write to disjoint slots, so
// results never depend on the worker count.

#include <cstddef>
#include <cstdint>

#include <omp.h>

namespace bfdr::par {

/// Set the OpenMP team size used by every kernel; 0 restores the runtime default.
void set_workers(int workers);
int workers();

template <class Body>
void for_each_index(std::int64_t count, Body&& body, bool parallel) {
  if (!parallel || count < 2) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) body(i);
}

/// Same as for_each_index but with dynamic scheduling, for grids whose
/// points have very uneven cost (one quadrature per point).
template <class Body>
void for_each_task(std::int64_t count, Body&& body, bool parallel) {
  if (!parallel || count < 2) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) body(i);
}

}  // namespace bfdr::par
