#pragma once

#include <tbb/blocked_range.h>
#include <tbb/info.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include <algorithm>
#include <cstddef>

namespace zeno {

// Runs body(i) for i in [0, n) on at most `workers` threads (0 = all cores).
// Each index must write only its own output slot; results are then
// independent of the worker count.
template <class Body>
void parallel_for_each_index(std::size_t n, std::size_t workers, Body&& body) {
  if (n == 0) return;
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  // Never ask for more threads than the machine offers.
  const int cores = tbb::info::default_concurrency();
  tbb::task_arena arena(workers == 0 ? cores : std::min(int(workers), cores));
  arena.execute([&] {
    tbb::parallel_for(tbb::blocked_range<std::size_t>(0, n), [&](const auto& r) {
      for (std::size_t i = r.begin(); i != r.end(); ++i) body(i);
    });
  });
}

}  // namespace zeno
