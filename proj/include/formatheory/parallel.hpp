#pragma once

#include <cstddef>
#include <cstdint>

namespace formatheory::par {

// Thread budget for the OpenMP kernels.  1 selects the serial reference
// implementations everywhere; 0 means "hardware default".
void set_threads(int n);
int threads();
bool enabled();

// Deterministic splitmix64; used for all seeded sampling so that reports are
// byte-identical across runs and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // Uniform in [0, bound); bound > 0.  Rejection-free modulo is fine here:
  // sample spaces are tiny compared to 2^64, bias is < 2^-50.
  std::size_t bounded(std::size_t bound) { return std::size_t(next() % bound); }

 private:
  std::uint64_t state_;
};

template <typename F>
void parallel_for(std::size_t n, F&& body);

}  // namespace formatheory::par

#ifdef _OPENMP
#include <omp.h>
#endif

namespace formatheory::par {

template <typename F>
void parallel_for(std::size_t n, F&& body) {
#ifdef _OPENMP
  if (enabled() && n > 1) {
    int nt = threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (long long i = 0; i < (long long)n; ++i) body(std::size_t(i));
    return;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace formatheory::par
