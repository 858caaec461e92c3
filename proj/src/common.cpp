#include "ctpotts/common.hpp"

#include <cstdlib>
#include <map>
#include <mutex>
#include <thread>

namespace ctpotts {

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

long double binomial_ld(int n, int k) {
  static std::map<std::pair<int, int>, long double> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(n, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  long double v = binomial(n, k).convert_to<long double>();
  cache.emplace(key, v);
  return v;
}

int thread_count() {
  if (const char* env = std::getenv("CTPOTTS_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
  std::size_t workers = static_cast<std::size_t>(thread_count());
  if (workers <= 1 || n < 2) {
    fn(0, n);
    return;
  }
  workers = std::min(workers, n);
  std::vector<std::thread> pool;
  std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t lo = w * chunk;
    std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(fn, lo, hi);
  }
  for (auto& t : pool) t.join();
}

}  // namespace ctpotts
