#ifndef NHF_PROPCHECK_HPP
#define NHF_PROPCHECK_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "nhf/controlled.hpp"

namespace nhf {

enum class ControlKind {
  identity,
  scalar,
  diagonal_positive,
  random_positive,
  polynomial_in_SF,
  random_invertible,
};

std::string to_string(ControlKind k);

/// Parameters of one randomized instance. All draws are reproduced exactly by
/// any implementation of the counter-based generator for a fixed seed.
struct InstanceSpec {
  uint64_t seed = 0;
  int ambient_dim = 2;   // d in [2, 8]
  int order = 2;         // n in [2, min(4, d)]
  int family_size = 1;   // m in [d_F, 2 d_F + 4]
  ControlKind control_kind = ControlKind::identity;
};

/// Deterministic instance: independent Gaussian anchors, Gaussian family
/// vectors, control per kind. Positive kinds build M^H M + 0.1 I (or a
/// positive diagonal); polynomial_in_SF builds a random positive-coefficient
/// quadratic in S_F, which commutes with S_F by construction.
ControlledFrame generate(const InstanceSpec& spec);

struct TheoremReport {
  std::string theorem_id;
  int trials = 0;
  int failures = 0;
  double worst_residual = 0.0;
  std::string status;  // pass | fail | skipped_precondition
};

/// The fixed list of certified statements, in output order.
const std::vector<std::string>& theorem_ids();

/// Runs `trials` keyed trials of every theorem check. Per-trial randomness is
/// derived from (seed, theorem_id, trial index), so the aggregate is
/// independent of execution order; trials run concurrently when OpenMP is
/// available.
std::vector<TheoremReport> run_suite(uint64_t seed, int trials);

/// Same aggregation without the parallel loop; reference for benchmarks and
/// equivalence tests.
std::vector<TheoremReport> run_suite_serial(uint64_t seed, int trials);

}  // namespace nhf

#endif
