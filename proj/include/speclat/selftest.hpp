#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "speclat/tolerance.hpp"

namespace speclat {

struct Check {
  std::string name;
  bool pass = true;
  double residual = 0;  // worst residual seen; 0 for purely boolean checks
  std::size_t instances = 0;
  std::string detail;   // first failure, if any
};

/// Randomized invariant suite over small Hermitian matrices and direct sums.
/// `trials` is the number of random instances per check.
std::vector<Check> run_selftest(std::uint64_t seed, std::size_t trials, const Toleranced& tol = {});

}  // namespace speclat
