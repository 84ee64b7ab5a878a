#include "core/threads.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace latcomm {

namespace {
std::atomic<int> g_thread_cap{0};
}

void set_thread_cap(int n) { g_thread_cap.store(n < 0 ? 0 : n); }
int thread_cap() { return g_thread_cap.load(); }

int effective_threads() {
  int cap = g_thread_cap.load();
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return cap == 0 ? int(hw) : std::min(cap, int(hw));
}

void parallel_chunks(int num_chunks, const std::function<void(int)>& fn) {
  int workers = std::min(effective_threads(), num_chunks);
  if (workers <= 1) {
    for (int c = 0; c < num_chunks; ++c) fn(c);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int c = next.fetch_add(1); c < num_chunks; c = next.fetch_add(1))
        fn(c);
    });
  for (auto& t : pool) t.join();
}

}  // namespace latcomm
