#pragma once

#include <cstddef>
#include <exception>

namespace hellyrel::detail {

// Runs f(i) for i in [0, n), in parallel when requested. The first exception
// thrown by any iteration is rethrown after the loop.
template <class F>
void for_each_index(std::size_t n, bool parallel, F&& f) {
  if (!parallel) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 4)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(hellyrel_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace hellyrel::detail
