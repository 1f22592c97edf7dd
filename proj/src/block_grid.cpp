#include "rbfsbp/block_grid.hpp"

#include <algorithm>
#include <limits>
#include <optional>

namespace rbfsbp {

BlockGrid BlockGrid::from_operators(std::vector<SbpOperator> blocks, Topology topology) {
  if (blocks.empty()) throw ContractError("BlockGrid: no blocks");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].size() < 2) throw ContractError("BlockGrid: block with fewer than 2 nodes");
    if (i > 0 && blocks[i - 1].grid.back() != blocks[i].grid.front()) {
      throw ContractError("BlockGrid: blocks " + std::to_string(i - 1) + " and " +
                          std::to_string(i) + " do not share their interface coordinate");
    }
  }
  BlockGrid g;
  g.topology_ = topology;
  g.offsets_.push_back(0);
  g.h_min_ = std::numeric_limits<double>::infinity();
  for (const auto& b : blocks) {
    g.offsets_.push_back(g.offsets_.back() + b.size());
    const auto p = b.grid.points();
    for (std::size_t k = 1; k < p.size(); ++k) {
      g.h_ = std::max(g.h_, p[k] - p[k - 1]);
      g.h_min_ = std::min(g.h_min_, p[k] - p[k - 1]);
    }
  }
  g.blocks_ = std::move(blocks);
  return g;
}

Vector BlockGrid::nodes() const {
  Vector x(size());
  for (int i = 0; i < block_count(); ++i) segment(x, i) = block(i).grid.as_vector();
  return x;
}

Vector BlockGrid::weights() const {
  Vector w(size());
  for (int i = 0; i < block_count(); ++i) segment(w, i) = block(i).weights;
  return w;
}

namespace {

std::vector<double> block_edges(const Interval& domain, int count) {
  std::vector<double> edges(static_cast<std::size_t>(count) + 1);
  for (int i = 0; i <= count; ++i) {
    edges[static_cast<std::size_t>(i)] = domain.left + domain.length() * i / count;
  }
  edges.back() = domain.right;
  return edges;
}

void check_layout(const BlockLayout& layout) {
  if (layout.block_count < 1) throw ConfigError("block layout: block_count must be >= 1");
  if (layout.centers_per_block < 2) throw ConfigError("block layout: need at least 2 centers");
  if (!(layout.domain.left < layout.domain.right)) throw ConfigError("block layout: empty domain");
}

}  // namespace

BlockGrid build_block_grid(const BlockLayout& layout) {
  check_layout(layout);
  const auto edges = block_edges(layout.domain, layout.block_count);
  const bool reusable = layout.center_family == PointFamily::Equidistant &&
                        layout.grid.family == PointFamily::Equidistant;
  std::vector<SbpOperator> ops;
  ops.reserve(static_cast<std::size_t>(layout.block_count));
  std::optional<SbpOperator> shared;
  for (int i = 0; i < layout.block_count; ++i) {
    const Interval sub{edges[static_cast<std::size_t>(i)], edges[static_cast<std::size_t>(i) + 1]};
    if (shared) {
      ops.push_back(map_operator(*shared, sub));
      continue;
    }
    const Interval build_on = layout.map_from_reference ? layout.reference : sub;
    const PointSet centers = generate(layout.center_family, layout.centers_per_block, build_on,
                                      layout.center_seed + static_cast<std::uint64_t>(i), true);
    GridSpec grid = layout.grid;
    grid.seed += static_cast<std::uint64_t>(i);
    SbpOperator op = construct_operator(layout.kernel, centers, layout.poly_degree, grid,
                                        layout.n_max, layout.options)
                         .op;
    if (layout.map_from_reference) {
      ops.push_back(map_operator(op, sub));
      if (reusable) shared = std::move(op);
    } else {
      ops.push_back(std::move(op));
    }
  }
  return BlockGrid::from_operators(std::move(ops), layout.topology);
}

BlockGrid collocation_grid(const BlockLayout& layout) {
  check_layout(layout);
  if (layout.block_count != 1) throw ConfigError("collocation mode is single-block only");
  const PointSet centers = generate(layout.center_family, layout.centers_per_block,
                                    layout.domain, layout.center_seed, true);
  const RbfSpace space =
      build_space(layout.kernel, centers, layout.poly_degree, layout.domain, layout.options);
  return BlockGrid::from_operators({collocation_operator(space)}, layout.topology);
}

}  // namespace rbfsbp
