#include "rhombsaw/loops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "rhombsaw/error.hpp"

namespace rhombsaw {

namespace detail {

std::array<bool, 4> side_mask(PlaquetteState s) {
  std::array<bool, 4> m{};
  for (int k : occupied_sides(s)) m[k] = true;
  return m;
}

}  // namespace detail

namespace {

using Passage = std::pair<int, int>;

// Side pairs joined inside a cell.
std::vector<Passage> passages(PlaquetteState s) {
  switch (s) {
    case PlaquetteState::Empty: return {};
    case PlaquetteState::ArcSW: return {{3, 0}};
    case PlaquetteState::ArcSE: return {{0, 1}};
    case PlaquetteState::ArcNE: return {{1, 2}};
    case PlaquetteState::ArcNW: return {{2, 3}};
    case PlaquetteState::StraightA: return {{0, 2}};
    case PlaquetteState::StraightB: return {{1, 3}};
    case PlaquetteState::DoubleArcTheta: return {{3, 0}, {1, 2}};
    case PlaquetteState::DoubleArcPiMinusTheta: return {{0, 1}, {2, 3}};
  }
  return {};
}

bool uses(PlaquetteState s, int side) { return detail::side_mask(s)[side]; }

double int_pow(double base, int e) {
  double r = 1.0;
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

}  // namespace

int LoopConfig::occupancy(int m) const {
  int count = 0;
  for (const auto& inc : graph->incidences[m]) {
    if (inc.cell >= 0 && uses(states[inc.cell], inc.side)) ++count;
  }
  return count;
}

std::vector<int> LoopConfig::loose_ends() const {
  std::vector<int> out;
  for (int m = 0; m < graph->mid_edge_count(); ++m) {
    if (occupancy(m) == 1) out.push_back(m);
  }
  return out;
}

Decomposition LoopConfig::decompose(const std::vector<int>& strand_starts) const {
  const RhombicGraph& g = *graph;
  std::vector<std::vector<Passage>> pass(g.cell_count());
  std::vector<std::vector<bool>> done(g.cell_count());
  for (int c = 0; c < g.cell_count(); ++c) {
    pass[c] = passages(states[c]);
    done[c].assign(pass[c].size(), false);
  }

  // Marks the passage of cell c containing `side` and returns its other side.
  auto take = [&](int c, int side) {
    for (std::size_t p = 0; p < pass[c].size(); ++p) {
      if (done[c][p]) continue;
      if (pass[c][p].first == side || pass[c][p].second == side) {
        done[c][p] = true;
        return pass[c][p].first == side ? pass[c][p].second : pass[c][p].first;
      }
    }
    throw GeometryError("loop tracing reused a passage");
  };
  // The other cell using mid-edge m, if any.
  auto across = [&](int m, int from_cell) -> RhombicGraph::Incidence {
    for (const auto& inc : g.incidences[m]) {
      if (inc.cell >= 0 && inc.cell != from_cell && uses(states[inc.cell], inc.side)) return inc;
    }
    return {};
  };

  Decomposition d;
  const std::vector<int> loose = loose_ends();
  std::vector<bool> consumed(g.mid_edge_count(), false);
  std::vector<int> order = strand_starts;
  for (int m : order) {
    if (std::find(loose.begin(), loose.end(), m) == loose.end()) {
      throw GeometryError("strand start is not a loose end");
    }
  }
  order.insert(order.end(), loose.begin(), loose.end());

  for (int start : order) {
    if (consumed[start]) continue;
    RhombicGraph::Incidence inc = across(start, -1);
    std::vector<int> strand{start};
    Winding w;
    int m = start;
    while (inc.cell >= 0) {
      const int out = take(inc.cell, inc.side);
      w += classify_passage(inc.side, out).turn;
      m = g.cells[inc.cell].side[out];
      strand.push_back(m);
      inc = across(m, inc.cell);
    }
    consumed[start] = consumed[m] = true;
    d.strands.push_back(std::move(strand));
    d.windings.push_back(w);
  }

  for (int c = 0; c < g.cell_count(); ++c) {
    for (std::size_t p = 0; p < pass[c].size(); ++p) {
      if (done[c][p]) continue;
      // Closed loop through this passage.
      int cell = c;
      int side = pass[c][p].first;
      while (true) {
        const int out = take(cell, side);
        const int m = g.cells[cell].side[out];
        const auto next = across(m, cell);
        if (next.cell < 0) throw GeometryError("loop tracing hit a loose end");
        cell = next.cell;
        side = next.side;
        if (cell == c && side == pass[c][p].first) break;
      }
      ++d.loops;
    }
  }
  return d;
}

double loop_weight(const LoopConfig& config, const std::vector<WeightSet>& weights, double n) {
  double w = 1.0;
  for (int c = 0; c < config.graph->cell_count(); ++c) {
    w *= state_weight(config.states[c], weights.at(config.graph->cells[c].weight_slot));
  }
  return w * int_pow(n, config.decompose().loops);
}

// ---- hexagon -------------------------------------------------------------

HexagonInstance HexagonInstance::build(double alpha, HexTiling tiling) {
  if (!(alpha > 0 && alpha < kPi / 2)) throw DomainError("hexagon needs 0 < alpha < pi/2");
  using V3 = std::array<int, 3>;
  HexagonInstance h;
  h.alpha = alpha;
  h.tiling = tiling;
  h.slot_angle = {alpha, 2 * alpha};

  std::map<std::pair<V3, V3>, int> ids;
  auto edge = [&](V3 p, V3 q) {
    if (q < p) std::swap(p, q);
    auto [it, fresh] = ids.try_emplace({p, q}, 0);
    if (fresh) it->second = h.graph.add_mid_edge();
    return it->second;
  };
  const std::array<V3, 6> ring = {V3{0, 0, 0}, V3{1, 0, 0}, V3{1, 1, 0},
                                  V3{1, 1, 1}, V3{0, 1, 1}, V3{0, 0, 1}};
  for (int k = 0; k < 6; ++k) edge(ring[k], ring[(k + 1) % 6]);

  // Rhombus at p spanned by unit vectors x then y (counter-clockwise).
  auto cell = [&](V3 p, int x, int y) {
    V3 px = p, pxy = p, py = p;
    ++px[x];
    ++pxy[x];
    ++pxy[y];
    ++py[y];
    const std::array<V3, 4> c = {p, px, pxy, py};
    std::array<int, 4> sides{};
    for (int k = 0; k < 4; ++k) sides[k] = edge(c[k], c[(k + 1) % 4]);
    h.graph.add_cell(sides, (y - x == 2) ? 1 : 0);
    h.corners.push_back(c);
  };
  if (tiling == HexTiling::T1) {
    cell({0, 0, 0}, 0, 1);
    cell({0, 0, 0}, 1, 2);
    cell({0, 1, 0}, 0, 2);
  } else {
    cell({0, 0, 0}, 0, 2);
    cell({1, 0, 0}, 1, 2);
    cell({0, 0, 1}, 0, 1);
  }
  if (h.graph.mid_edge_count() != 9) throw GeometryError("hexagon tiling is malformed");
  return h;
}

std::vector<double> HexagonInstance::rhombus_angles() const {
  std::vector<double> out;
  for (const auto& c : graph.cells) out.push_back(slot_angle[c.weight_slot]);
  std::sort(out.begin(), out.end());
  return out;
}

double YangBaxterReport::max_residual() const {
  double m = 0;
  for (const auto& r : rows) m = std::max(m, std::abs(r.sum_t1 - r.sum_t2));
  return m;
}

YangBaxterReport yang_baxter_table(double alpha, double s) {
  YangBaxterReport rep;
  rep.alpha = alpha;
  rep.s = s;
  rep.n = loop_fugacity(s);
  std::map<std::string, std::pair<double, double>> sums;

  for (HexTiling t : {HexTiling::T1, HexTiling::T2}) {
    const HexagonInstance h = HexagonInstance::build(alpha, t);
    std::vector<WeightSet> weights;
    for (double ang : h.slot_angle) {
      weights.push_back(on_weights(LatticeAngle::unrestricted(ang), s).weights);
    }
    for_each_config(h.graph, 0, true, [&](const LoopConfig& cfg) {
      const Decomposition d = cfg.decompose();
      std::string key(6, '-');
      for (const auto& strand : d.strands) {
        const int a = strand.front(), b = strand.back();
        if (a >= 6 || b >= 6) throw GeometryError("strand ends inside the hexagon");
        key[a] = static_cast<char>('0' + b);
        key[b] = static_cast<char>('0' + a);
      }
      double w = 1.0;
      for (int c = 0; c < h.graph.cell_count(); ++c) {
        w *= state_weight(cfg.states[c], weights[h.graph.cells[c].weight_slot]);
      }
      w *= int_pow(rep.n, d.loops);
      auto& slot = sums[key];
      (t == HexTiling::T1 ? slot.first : slot.second) += w;
    });
  }
  for (const auto& [key, v] : sums) rep.rows.push_back({key, v.first, v.second});
  return rep;
}

double yang_baxter_residual(double alpha, double s) {
  return yang_baxter_table(alpha, s).max_residual();
}

// ---- loop observable -----------------------------------------------------

OnObservable on_observable(const ParallelogramDomain& domain, double s, const WeightSet* weights,
                           int max_cells) {
  const auto rhombi = domain.rhombi();
  if (static_cast<int>(rhombi.size()) > max_cells) {
    throw BudgetExceeded("loop observable limited to " + std::to_string(max_cells) + " rhombi");
  }
  const LatticeGraph lg = LatticeGraph::of(domain);
  const RhombicGraph& g = lg.graph();
  const WeightSet w = weights ? *weights : on_weights(domain.theta(), s).weights;
  const double n = loop_fugacity(s);
  const double sigma = s + 1;
  const double theta = domain.theta().radians();
  const int a = *lg.id(domain.origin());

  std::vector<Complex> F(g.mid_edge_count(), Complex{0, 0});
  for_each_config(g, 2, false, [&](const LoopConfig& cfg) {
    const auto loose = cfg.loose_ends();
    int z = -1;
    if (loose.empty()) {
      z = a;
    } else if (loose.size() == 2 && (loose[0] == a || loose[1] == a)) {
      z = loose[0] == a ? loose[1] : loose[0];
    } else {
      return;
    }
    const Decomposition d = cfg.decompose(z == a ? std::vector<int>{} : std::vector<int>{a});
    double wt = 1.0;
    for (int c = 0; c < g.cell_count(); ++c) wt *= state_weight(cfg.states[c], w);
    wt *= int_pow(n, d.loops);
    const double W = d.windings.empty() ? 0.0 : d.windings.front().radians(theta);
    F[z] += wt * std::polar(1.0, -sigma * W);
  });

  OnObservable out{domain, s, sigma, n, {}, 0.0};
  for (int m = 0; m < g.mid_edge_count(); ++m) out.values[lg.label(m)] = F[m];
  const Complex e = std::polar(1.0, theta);
  for (const Rhombus& r : rhombi) {
    const Complex res = out.values.at(r.side(0)) + e * out.values.at(r.side(1)) -
                        out.values.at(r.side(2)) - e * out.values.at(r.side(3));
    out.max_cr_residual = std::max(out.max_cr_residual, std::abs(res));
  }
  return out;
}

double on_observable_cr_check(const ParallelogramDomain& domain, double s) {
  return on_observable(domain, s).max_cr_residual;
}

}  // namespace rhombsaw
