#pragma once

#include <cstdint>
#include <vector>

#include "rbfsbp/quadrature.hpp"
#include "rbfsbp/sbp.hpp"
#include "rbfsbp/types.hpp"

namespace rbfsbp {

enum class Topology {
  Line,  ///< physical boundaries at both ends
  Ring,  ///< last block's right end coupled to the first block's left end
};

/// Ordered blocks, each carrying its own operator. The global state is the
/// concatenation of the block states; interface nodes are duplicated, one
/// copy per block.
class BlockGrid {
 public:
  /// Adjacent blocks must share interface coordinates exactly.
  static BlockGrid from_operators(std::vector<SbpOperator> blocks, Topology topology);

  const std::vector<SbpOperator>& blocks() const { return blocks_; }
  const SbpOperator& block(int i) const { return blocks_[static_cast<std::size_t>(i)]; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  Topology topology() const { return topology_; }

  /// Start of block i in the global state; offset(block_count()) == size().
  int offset(int i) const { return offsets_[static_cast<std::size_t>(i)]; }
  int block_size(int i) const { return offset(i + 1) - offset(i); }
  int size() const { return offsets_.back(); }

  Interval domain() const { return {blocks_.front().grid.front(), blocks_.back().grid.back()}; }
  /// Largest neighbour gap over all blocks.
  double h() const { return h_; }
  /// Smallest neighbour gap over all blocks.
  double h_min() const { return h_min_; }

  /// Global node coordinates (interface nodes appear twice).
  Vector nodes() const;
  /// Global P diagonal.
  Vector weights() const;

  Eigen::Map<const Vector> segment(const Vector& u, int i) const {
    return {u.data() + offset(i), block_size(i)};
  }
  Eigen::Map<Vector> segment(Vector& u, int i) const {
    return {u.data() + offset(i), block_size(i)};
  }

 private:
  BlockGrid() = default;

  std::vector<SbpOperator> blocks_;
  Topology topology_ = Topology::Line;
  std::vector<int> offsets_;
  double h_ = 0.0;
  double h_min_ = 0.0;
};

/// How to build a uniform multi-block layout.
struct BlockLayout {
  Kernel kernel = Kernel::phs_odd(2);
  int centers_per_block = 5;  ///< K
  int poly_degree = 0;
  Interval domain;
  int block_count = 1;  ///< I
  PointFamily center_family = PointFamily::Equidistant;
  std::uint64_t center_seed = 0;  ///< block i uses center_seed + i
  GridSpec grid;                  ///< oversampled grid family
  int n_max = 200;
  Topology topology = Topology::Line;
  SpaceOptions options;
  /// Build each block's operator on `reference` and map it affinely onto the
  /// block. Shape parameters are then measured in reference coordinates.
  bool map_from_reference = false;
  Interval reference{0.0, 1.0};
};

/// Splits the domain into block_count equal subintervals and builds, per
/// block, the RBF space, its positive least-squares rule and the RBFSBP
/// operator (directly on the block, or on the reference interval and then
/// mapped). Deterministic layouts (equidistant centers and grid) are built
/// once and reused.
BlockGrid build_block_grid(const BlockLayout& layout);

/// Single-block classical collocation layout (grid = centers).
BlockGrid collocation_grid(const BlockLayout& layout);

}  // namespace rbfsbp
