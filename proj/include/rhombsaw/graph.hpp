#pragma once

// Compact cell/mid-edge incidence structure shared by the walk enumerator and
// the loop-configuration code. Each cell is a rhombus whose four sides are
// listed counter-clockwise; corners with even index carry the cell's angle
// (theta-type), odd corners carry pi minus it.

#include <array>
#include <optional>
#include <vector>

#include "rhombsaw/geometry.hpp"

namespace rhombsaw {

struct RhombicGraph {
  struct Cell {
    std::array<int, 4> side{-1, -1, -1, -1};  // mid-edge ids
    int weight_slot = 0;                      // index into a per-angle weight table
  };
  struct Incidence {
    int cell = -1;
    int side = -1;
  };

  std::vector<Cell> cells;
  std::vector<std::array<Incidence, 2>> incidences;  // per mid-edge, unused slots have cell -1

  int mid_edge_count() const { return static_cast<int>(incidences.size()); }
  int cell_count() const { return static_cast<int>(cells.size()); }
  bool is_boundary(int mid) const { return incidences[mid][1].cell < 0; }

  // Appends a cell and records the incidences of its sides.
  int add_cell(const std::array<int, 4>& sides, int weight_slot = 0);
  int add_mid_edge();
};

// A RhombicGraph built from a finite set of lattice rhombi, with dense lookup
// between lattice labels and ids.
class LatticeGraph {
 public:
  explicit LatticeGraph(const std::vector<Rhombus>& rhombi);

  // All rhombi R(i,j) with |i - ci| <= radius and |j - cj| <= radius.
  static LatticeGraph window(const Rhombus& center, int radius);
  static LatticeGraph of(const ParallelogramDomain& domain);

  const RhombicGraph& graph() const { return graph_; }

  std::optional<int> id(const MidEdge& m) const;
  std::optional<int> cell(const Rhombus& r) const;
  const MidEdge& label(int mid) const { return labels_[mid]; }
  const Rhombus& rhombus(int cell) const { return rhombi_[cell]; }

 private:
  int dense_mid(const MidEdge& m) const;
  int dense_cell(const Rhombus& r) const;

  RhombicGraph graph_;
  std::vector<MidEdge> labels_;
  std::vector<Rhombus> rhombi_;
  int imin_ = 0, jmin_ = 0, width_ = 0, height_ = 0;
  std::vector<int> mid_index_;   // 2 * (width+1) * (height+1) slots
  std::vector<int> cell_index_;  // width * height slots
};

}  // namespace rhombsaw
