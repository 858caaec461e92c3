#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctpotts {

using BigInt = boost::multiprecision::cpp_int;
using Rng = std::mt19937_64;

/// Thrown when an explicit enumeration budget would be exceeded.
/// Callers may catch it and switch to transfer-matrix or Monte Carlo paths.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an input violates a structural precondition (incompatible
/// strips, missing annotations, malformed serialized data).
class StructureError : public std::runtime_error {
 public:
  explicit StructureError(const std::string& what) : std::runtime_error(what) {}
};

/// C(n, k) as an exact big integer. n up to a few hundred.
BigInt binomial(int n, int k);

/// C(n, k) rounded once to long double (exact integer arithmetic first).
long double binomial_ld(int n, int k);

inline double log_sum_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

/// log(e^a - e^b) for a > b.
inline double log_diff_exp(double a, double b) {
  return a + std::log1p(-std::exp(b - a));
}

/// Worker count for sweep parallelism: CTPOTTS_THREADS, else hardware.
int thread_count();

/// Runs fn(begin, end) over [0, n) split into contiguous chunks, one per
/// worker. fn must be safe to run concurrently on disjoint ranges.
void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace ctpotts
