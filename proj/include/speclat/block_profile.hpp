#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace speclat {

/// Dimensions (m_j) of the matrix factors in a direct sum of B(C^{m_j}).
struct BlockProfile {
  std::vector<Eigen::Index> dims;

  BlockProfile() = default;
  explicit BlockProfile(std::vector<Eigen::Index> d);

  static BlockProfile single(Eigen::Index n) { return BlockProfile({n}); }

  std::size_t size() const { return dims.size(); }
  Eigen::Index dim(std::size_t j) const { return dims[j]; }
  Eigen::Index total() const;
  Eigen::Index offset(std::size_t j) const;
  bool has_two_dimensional_block() const;

  friend bool operator==(const BlockProfile&, const BlockProfile&) = default;
};

}  // namespace speclat
