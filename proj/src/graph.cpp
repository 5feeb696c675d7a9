#include "rhombsaw/graph.hpp"

#include <algorithm>
#include <limits>

#include "rhombsaw/error.hpp"

namespace rhombsaw {

int RhombicGraph::add_mid_edge() {
  incidences.push_back({});
  return static_cast<int>(incidences.size()) - 1;
}

int RhombicGraph::add_cell(const std::array<int, 4>& sides, int weight_slot) {
  const int c = static_cast<int>(cells.size());
  cells.push_back({sides, weight_slot});
  for (int k = 0; k < 4; ++k) {
    auto& inc = incidences.at(sides[k]);
    if (inc[0].cell < 0) {
      inc[0] = {c, k};
    } else if (inc[1].cell < 0) {
      inc[1] = {c, k};
    } else {
      throw GeometryError("mid-edge shared by more than two cells");
    }
  }
  return c;
}

LatticeGraph::LatticeGraph(const std::vector<Rhombus>& rhombi) {
  if (rhombi.empty()) throw GeometryError("empty lattice region");
  int imax = std::numeric_limits<int>::min();
  int jmax = std::numeric_limits<int>::min();
  imin_ = jmin_ = std::numeric_limits<int>::max();
  for (const Rhombus& r : rhombi) {
    imin_ = std::min(imin_, r.i);
    jmin_ = std::min(jmin_, r.j);
    imax = std::max(imax, r.i);
    jmax = std::max(jmax, r.j);
  }
  width_ = imax - imin_ + 1;
  height_ = jmax - jmin_ + 1;
  mid_index_.assign(2 * static_cast<std::size_t>(width_ + 1) * (height_ + 1), -1);
  cell_index_.assign(static_cast<std::size_t>(width_) * height_, -1);

  std::vector<Rhombus> sorted = rhombi;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  for (const Rhombus& r : sorted) {
    std::array<int, 4> sides{};
    for (int k = 0; k < 4; ++k) {
      const MidEdge m = r.side(k);
      int& slot = mid_index_[dense_mid(m)];
      if (slot < 0) {
        slot = graph_.add_mid_edge();
        labels_.push_back(m);
      }
      sides[k] = slot;
    }
    cell_index_[dense_cell(r)] = graph_.add_cell(sides);
    rhombi_.push_back(r);
  }
}

LatticeGraph LatticeGraph::window(const Rhombus& center, int radius) {
  std::vector<Rhombus> rs;
  rs.reserve(static_cast<std::size_t>(2 * radius + 1) * (2 * radius + 1));
  for (int i = center.i - radius; i <= center.i + radius; ++i) {
    for (int j = center.j - radius; j <= center.j + radius; ++j) rs.push_back({i, j});
  }
  return LatticeGraph(rs);
}

LatticeGraph LatticeGraph::of(const ParallelogramDomain& domain) {
  return LatticeGraph(domain.rhombi());
}

int LatticeGraph::dense_mid(const MidEdge& m) const {
  const int di = m.i - imin_;
  const int dj = m.j - jmin_;
  if (di < 0 || dj < 0 || di > width_ || dj > height_) return -1;
  return (di * (height_ + 1) + dj) * 2 + (m.orient == Orient::V ? 1 : 0);
}

int LatticeGraph::dense_cell(const Rhombus& r) const {
  const int di = r.i - imin_;
  const int dj = r.j - jmin_;
  if (di < 0 || dj < 0 || di >= width_ || dj >= height_) return -1;
  return di * height_ + dj;
}

std::optional<int> LatticeGraph::id(const MidEdge& m) const {
  const int d = dense_mid(m);
  if (d < 0 || mid_index_[d] < 0) return std::nullopt;
  return mid_index_[d];
}

std::optional<int> LatticeGraph::cell(const Rhombus& r) const {
  const int d = dense_cell(r);
  if (d < 0 || cell_index_[d] < 0) return std::nullopt;
  return cell_index_[d];
}

}  // namespace rhombsaw
