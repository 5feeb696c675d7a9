#pragma once

// Loop O(n) configurations on small rhombic domains: loop weights, the
// Yang-Baxter hexagon and the loop-weighted observable.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "rhombsaw/enumerate.hpp"
#include "rhombsaw/geometry.hpp"
#include "rhombsaw/graph.hpp"
#include "rhombsaw/weights.hpp"

namespace rhombsaw {

// Strand structure of a configuration.
struct Decomposition {
  int loops = 0;
  // Open strands as mid-edge sequences, first and last entries are endpoints.
  std::vector<std::vector<int>> strands;
  // Winding of each open strand, traced from its first mid-edge.
  std::vector<Winding> windings;
};

struct LoopConfig {
  const RhombicGraph* graph = nullptr;
  std::vector<PlaquetteState> states;

  // Number of cells using mid-edge m (0, 1 or 2).
  int occupancy(int m) const;
  // Mid-edges where the strands may stop: boundary mid-edges in use and
  // interior mid-edges used by exactly one of their two cells.
  std::vector<int> loose_ends() const;
  // Traces every strand and loop. Each passage is used exactly once; throws
  // GeometryError if the tracing is inconsistent.
  Decomposition decompose(const std::vector<int>& strand_starts = {}) const;
};

// Product of plaquette weights (each cell uses weights[cell.weight_slot]) times
// n^loops, with n^0 = 1.
double loop_weight(const LoopConfig& config, const std::vector<WeightSet>& weights, double n);

// Calls visit(config) for every assignment of states to the cells with at
// most max_loose loose ends. Interior mid-edges used by one of their two cells
// always count as loose ends; used boundary mid-edges count unless
// boundary_free is set.
template <class Visit>
void for_each_config(const RhombicGraph& g, int max_loose, bool boundary_free, Visit&& visit);

enum class HexTiling { T1, T2 };

// Symmetric equilateral hexagon spanned by unit vectors at -alpha, 0, +alpha,
// tiled by three rhombi around the interior vertex b (T1) or a + c (T2).
struct HexagonInstance {
  double alpha = 0;
  HexTiling tiling = HexTiling::T1;
  RhombicGraph graph;                   // mid-edges 0..5 are the boundary, cyclic
  std::vector<double> slot_angle;       // rhombus angle per weight slot
  std::vector<std::array<std::array<int, 3>, 4>> corners;  // per cell, as (na, nb, nc)

  static HexagonInstance build(double alpha, HexTiling tiling);
  std::vector<double> rhombus_angles() const;  // sorted, one per cell
};

struct YangBaxterRow {
  std::string pattern;  // partner of each boundary mid-edge, '-' when unused
  double sum_t1 = 0;
  double sum_t2 = 0;
};

struct YangBaxterReport {
  double alpha = 0;
  double s = 0;
  double n = 0;
  std::vector<YangBaxterRow> rows;
  double max_residual() const;
};

YangBaxterReport yang_baxter_table(double alpha, double s);
double yang_baxter_residual(double alpha, double s);

struct OnObservable {
  ParallelogramDomain domain;
  double s = 0;
  double sigma = 0;
  double n = 0;
  std::map<MidEdge, Complex> values;
  double max_cr_residual = 0;
};

// F_a(z) summed over configurations made of loops plus one path a -> z inside
// the domain, with spin sigma = s + 1 and weights on_weights(theta, s) unless
// `weights` overrides them. Throws BudgetExceeded above max_cells rhombi.
OnObservable on_observable(const ParallelogramDomain& domain, double s,
                           const WeightSet* weights = nullptr, int max_cells = 6);
double on_observable_cr_check(const ParallelogramDomain& domain, double s);

// ---- template definitions ----------------------------------------------

namespace detail {
inline constexpr std::array<PlaquetteState, kPlaquetteStateCount> kAllStates = {
    PlaquetteState::Empty,     PlaquetteState::ArcSW,          PlaquetteState::ArcSE,
    PlaquetteState::ArcNE,     PlaquetteState::ArcNW,          PlaquetteState::StraightA,
    PlaquetteState::StraightB, PlaquetteState::DoubleArcTheta, PlaquetteState::DoubleArcPiMinusTheta};

std::array<bool, 4> side_mask(PlaquetteState s);
}  // namespace detail

template <class Visit>
void for_each_config(const RhombicGraph& g, int max_loose, bool boundary_free, Visit&& visit) {
  LoopConfig cfg;
  cfg.graph = &g;
  cfg.states.assign(g.cell_count(), PlaquetteState::Empty);
  // seen[m]: assigned cells incident to m; used[m]: those among them using m.
  std::vector<int> used(g.mid_edge_count(), 0), seen(g.mid_edge_count(), 0);
  int loose = 0;

  auto rec = [&](auto&& self, int cell) -> void {
    if (cell == g.cell_count()) {
      visit(static_cast<const LoopConfig&>(cfg));
      return;
    }
    const auto& sides = g.cells[cell].side;
    for (PlaquetteState st : detail::kAllStates) {
      const auto mask = detail::side_mask(st);
      int added = 0;
      for (int k = 0; k < 4; ++k) {
        const int m = sides[k];
        ++seen[m];
        used[m] += mask[k];
        if (g.is_boundary(m)) {
          added += (mask[k] && !boundary_free) ? 1 : 0;
        } else if (seen[m] == 2 && used[m] == 1) {
          ++added;
        }
      }
      cfg.states[cell] = st;
      if (loose + added <= max_loose) {
        loose += added;
        self(self, cell + 1);
        loose -= added;
      }
      for (int k = 0; k < 4; ++k) {
        --seen[sides[k]];
        used[sides[k]] -= mask[k];
      }
    }
    cfg.states[cell] = PlaquetteState::Empty;
  };
  rec(rec, 0);
}

}  // namespace rhombsaw
