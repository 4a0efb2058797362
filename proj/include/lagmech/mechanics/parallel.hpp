#pragma once

// Order-preserving parallel map over an index range.

#include <algorithm>
#include <cstddef>
#include <future>
#include <thread>
#include <vector>

namespace lagmech::mechanics {

template <class R, class F>
std::vector<R> parallel_map(std::size_t count, F&& f) {
  std::vector<R> out(count);
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(count, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < count; i += workers) out[i] = f(i);
    }));
  }
  for (auto& j : jobs) j.get();
  return out;
}

}  // namespace lagmech::mechanics
