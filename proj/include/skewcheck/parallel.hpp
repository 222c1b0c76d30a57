#pragma once

#include <cstddef>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace skewcheck {

// Worker count: 0 = library default (all hardware threads), 1 = serial
// reference path, k > 1 = exactly k OpenMP threads.
inline int resolve_threads(int requested) {
#ifdef _OPENMP
  if (requested <= 0) return omp_get_max_threads();
  return requested;
#else
  (void)requested;
  return 1;
#endif
}

struct MinLoc {
  double value = std::numeric_limits<double>::infinity();
  std::size_t index = std::numeric_limits<std::size_t>::max();
};

// (value, index) lexicographic minimum; the index tie-break keeps parallel
// reductions deterministic for any schedule and thread count.
inline bool improves(const MinLoc& candidate, const MinLoc& best) {
  if (candidate.value < best.value) return true;
  return candidate.value == best.value && candidate.index < best.index;
}

template <class EvalFn>
MinLoc min_index_serial(std::size_t count, EvalFn&& eval) {
  MinLoc best;
  for (std::size_t i = 0; i < count; ++i) {
    const MinLoc cur{eval(i), i};
    if (improves(cur, best)) best = cur;
  }
  return best;
}

template <class EvalFn>
MinLoc min_index(std::size_t count, EvalFn&& eval, int threads) {
  const int nt = resolve_threads(threads);
  if (nt == 1 || count < 2) return min_index_serial(count, eval);
#ifdef _OPENMP
  MinLoc best;
#pragma omp parallel num_threads(nt)
  {
    MinLoc local;
#pragma omp for schedule(static) nowait
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
      const MinLoc cur{eval(static_cast<std::size_t>(i)), static_cast<std::size_t>(i)};
      if (improves(cur, local)) local = cur;
    }
#pragma omp critical
    {
      if (improves(local, best)) best = local;
    }
  }
  return best;
#else
  return min_index_serial(count, eval);
#endif
}

template <class BodyFn>
void for_each_index_serial(std::size_t count, BodyFn&& body) {
  for (std::size_t i = 0; i < count; ++i) body(i);
}

// Independent per-index work (writes go to disjoint slots).
template <class BodyFn>
void for_each_index(std::size_t count, BodyFn&& body, int threads) {
  const int nt = resolve_threads(threads);
  if (nt == 1 || count < 2) {
    for_each_index_serial(count, body);
    return;
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nt)
  for (long long i = 0; i < static_cast<long long>(count); ++i) {
    body(static_cast<std::size_t>(i));
  }
#else
  for_each_index_serial(count, body);
#endif
}

}  // namespace skewcheck
