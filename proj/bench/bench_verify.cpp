// Compares the parallel theorem suite against the serial reference.
// Usage: bench_verify [trials] [seed]
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "nhf/framespec.hpp"
#include "nhf/propcheck.hpp"

namespace {

template <typename F>
double time_ms(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const int trials = argc > 1 ? std::atoi(argv[1]) : 50;
  const uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 0;

  std::vector<nhf::TheoremReport> parallel, serial;
  const double ms_parallel = time_ms([&] { parallel = nhf::run_suite(seed, trials); });
  const double ms_serial = time_ms([&] { serial = nhf::run_suite_serial(seed, trials); });

  const bool identical =
      nhf::reports_to_json(parallel).dump() == nhf::reports_to_json(serial).dump();
  std::printf("trials=%d seed=%llu\n", trials, static_cast<unsigned long long>(seed));
  std::printf("parallel: %8.1f ms\n", ms_parallel);
  std::printf("serial:   %8.1f ms\n", ms_serial);
  std::printf("speedup:  %8.2fx\n", ms_serial / ms_parallel);
  std::printf("reports identical: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
