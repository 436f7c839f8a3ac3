#include "mlrank/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace mlrank {

namespace {
std::atomic<int> g_thread_cap{1};
}

int thread_cap() { return g_thread_cap.load(); }

void set_thread_cap(int n) {
  int hw = (int)std::thread::hardware_concurrency();
  if (hw <= 0) hw = 1;
  g_thread_cap.store(std::clamp(n, 1, hw));
}

void run_chunked(uint64_t total, int chunks,
                 const std::function<void(int, uint64_t, uint64_t)>& fn) {
  chunks = std::max(1, chunks);
  if (chunks == 1 || total < 2) {
    fn(0, 0, total);
    return;
  }
  uint64_t per = (total + chunks - 1) / chunks;
  std::vector<std::thread> workers;
  for (int c = 0; c < chunks; ++c) {
    uint64_t begin = per * c;
    uint64_t end = std::min(total, begin + per);
    if (begin >= end) break;
    workers.emplace_back(fn, c, begin, end);
  }
  for (auto& w : workers) w.join();
}

}  // namespace mlrank
