#pragma once

// Exhaustive backtracking enumeration of weighted self-avoiding mid-edge walks.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "rhombsaw/error.hpp"
#include "rhombsaw/geometry.hpp"
#include "rhombsaw/graph.hpp"
#include "rhombsaw/weights.hpp"

namespace rhombsaw {

// Corner labels name the surrounded corner: SW and NE carry theta, SE and NW
// carry pi - theta. StraightA joins bottom and top, StraightB left and right.
enum class PlaquetteState : std::uint8_t {
  Empty,
  ArcSW,
  ArcSE,
  ArcNE,
  ArcNW,
  StraightA,
  StraightB,
  DoubleArcTheta,
  DoubleArcPiMinusTheta,
};

inline constexpr int kPlaquetteStateCount = 9;

const char* to_string(PlaquetteState s);

// State after adding a passage between sides a and b, or nullopt when the
// result is not one of the admissible states.
std::optional<PlaquetteState> add_passage(PlaquetteState s, int side_a, int side_b);

// Mid-edge sides (0..3) used by the state.
std::vector<int> occupied_sides(PlaquetteState s);

double state_weight(PlaquetteState s, const WeightSet& w);

struct LengthRule {
  int theta_arc = 1;
  int pi_minus_theta_arc = 1;
  int straight = 1;

  static LengthRule arcs() { return {1, 1, 1}; }
  static LengthRule honeycomb() { return {1, 2, 2}; }

  int length(StepKind kind) const {
    switch (kind) {
      case StepKind::ArcTheta: return theta_arc;
      case StepKind::ArcPiMinusTheta: return pi_minus_theta_arc;
      case StepKind::Straight: return straight;
    }
    return 0;
  }
  int min_length() const { return std::min({theta_arc, pi_minus_theta_arc, straight}); }
  void validate() const;
};

class Walk {
 public:
  explicit Walk(MidEdge start) : start_(start), visited_{start} {}

  // Throws std::invalid_argument when the steps do not form an admissible walk.
  static Walk from_steps(MidEdge start, const std::vector<Step>& steps);

  // Appends the step if the result is still an admissible walk.
  bool try_extend(const Step& step);

  const MidEdge& start() const { return start_; }
  MidEdge end() const { return steps_.empty() ? start_ : steps_.back().to; }
  const std::vector<Step>& steps() const { return steps_; }
  const std::map<Rhombus, PlaquetteState>& occupancy() const { return occupancy_; }
  bool visits(const MidEdge& m) const { return visited_.count(m) != 0; }
  Winding winding() const;

 private:
  MidEdge start_;
  std::vector<Step> steps_;
  std::map<Rhombus, PlaquetteState> occupancy_;
  std::set<MidEdge> visited_;
};

double weight_of(const Walk& walk, const WeightSet& w);
int length_of(const Walk& walk, const LengthRule& rule);

// Dump format: "start;from>to,from>to,..." with mid-edges written "i,j,H|V".
std::string format_walk(const Walk& walk);
Walk parse_walk(const std::string& text);

struct EnumerateOptions {
  int max_length_cap = 40;           // free-lattice step budget
  std::uint64_t max_walks = 0;       // 0 = unlimited
  int threads = 1;
  int prefix_depth = 2;              // split depth for parallel runs
};

struct EnumerationStats {
  std::uint64_t walks = 0;
  int max_depth = 0;
};

class WalkEnumerator;

// Read-only view of the walk currently being visited.
class WalkCursor {
 public:
  int end_id() const;
  const MidEdge& end() const;
  int length() const { return length_; }
  int steps() const { return static_cast<int>(frames_.size()); }
  double weight() const { return weight_; }
  const Winding& winding() const { return winding_; }
  PlaquetteState state(int cell) const { return states_[cell]; }
  // First rhombus entered by the walk (nullopt for the empty walk).
  std::optional<int> first_cell() const {
    return frames_.empty() ? std::nullopt : std::optional<int>(frames_.front().cell);
  }
  Walk to_walk() const;
  // Product of state weights recomputed from the occupancy (no increments).
  double recomputed_weight() const;

 private:
  friend class WalkEnumerator;
  struct Frame {
    int cell;
    int to_mid;
    PlaquetteState prev_state;
    double prev_weight;
    Winding turn;
    int added_length;
  };

  const WalkEnumerator* owner_ = nullptr;
  int start_ = -1;
  int current_ = -1;
  int length_ = 0;
  double weight_ = 1.0;
  Winding winding_;
  std::vector<Frame> frames_;
  std::vector<PlaquetteState> states_;
  std::vector<std::uint64_t> visited_;
};

class WalkEnumerator {
 public:
  // Walks of rule-length <= max_length from `start` inside `region`. `weights`
  // is indexed by the cells' weight slots.
  WalkEnumerator(const LatticeGraph& region, MidEdge start, LengthRule rule,
                 std::vector<WeightSet> weights, int max_length,
                 EnumerateOptions options = {});

  // Free lattice: the region is a window of side 2*max_steps+3 around start, so
  // no walk can reach its border.
  static WalkEnumerator free_lattice(MidEdge start, LengthRule rule, const WeightSet& w,
                                     int max_length, EnumerateOptions options = {});

  const LatticeGraph& region() const { return *region_; }
  const LengthRule& rule() const { return rule_; }
  int max_length() const { return max_length_; }

  template <class Visit>
  EnumerationStats run(Visit&& visit) const {
    WalkCursor cur = fresh_cursor();
    EnumerationStats stats;
    dfs(cur, visit, stats);
    return stats;
  }

  // Partitions the walk tree by prefixes of `options.prefix_depth` steps and
  // explores them on `options.threads` workers. Each partition accumulates
  // into its own copy of `init` via visit(acc, cursor); partial results are
  // merged with merge(total, part) in prefix order, so the outcome does not
  // depend on the thread count.
  template <class Acc, class Visit, class Merge>
  Acc run_partitioned(const Acc& init, Visit visit, Merge merge,
                      EnumerationStats* stats_out = nullptr) const;

 private:
  friend class WalkCursor;
  struct Exit {
    int entry;
    int side;
    int mid;
    int corner;
    StepKind kind;
    Winding turn;
  };

  WalkCursor fresh_cursor() const;
  bool visited(const WalkCursor& c, int mid) const {
    return (c.visited_[mid >> 6] >> (mid & 63)) & 1U;
  }
  static void flip(WalkCursor& c, int mid) { c.visited_[mid >> 6] ^= std::uint64_t{1} << (mid & 63); }

  // Cells (with entry side) the walk may enter next from its current mid-edge.
  std::array<RhombicGraph::Incidence, 2> next_cells(const WalkCursor& c, int* count) const;
  const std::array<Exit, 3>& exits_for(int cell, int entry_side) const {
    return exits_[static_cast<std::size_t>(cell) * 4 + entry_side];
  }
  // Re-applies a recorded step (cell, target mid-edge).
  void replay(WalkCursor& c, int cell, int mid) const;
  bool push(WalkCursor& c, int cell, const Exit& ex) const;
  void pop(WalkCursor& c) const;
  double recompute(const WalkCursor& c) const;
  void note_visit(const WalkCursor& c, EnumerationStats& stats) const;

  template <class Visit>
  void dfs(WalkCursor& c, Visit& visit, EnumerationStats& stats) const {
    note_visit(c, stats);
    visit(static_cast<const WalkCursor&>(c));
    int n = 0;
    const auto cells = next_cells(c, &n);
    for (int t = 0; t < n; ++t) {
      for (const Exit& ex : exits_for(cells[t].cell, cells[t].side)) {
        if (!push(c, cells[t].cell, ex)) continue;
        dfs(c, visit, stats);
        pop(c);
      }
    }
  }

  // Collects the cursors' step paths at exactly `depth` steps, visiting the
  // shorter walks on the way.
  template <class Visit>
  void collect(WalkCursor& c, int depth, Visit& visit, EnumerationStats& stats,
               std::vector<std::vector<std::pair<int, int>>>& prefixes) const;

  std::shared_ptr<const LatticeGraph> owned_;
  const LatticeGraph* region_;
  int start_;
  LengthRule rule_;
  std::vector<WeightSet> weights_;
  int max_length_;
  EnumerateOptions options_;
  // exits_[cell * 4 + entry_side]: the three other sides in canonical order.
  std::vector<std::array<Exit, 3>> exits_;
  // state_weight_[slot][state]
  std::vector<std::array<double, kPlaquetteStateCount>> state_weight_;
  bool free_ = false;
};

// ---- template definitions ---------------------------------------------

template <class Visit>
void WalkEnumerator::collect(WalkCursor& c, int depth, Visit& visit, EnumerationStats& stats,
                             std::vector<std::vector<std::pair<int, int>>>& prefixes) const {
  if (c.steps() == depth) {
    std::vector<std::pair<int, int>> path;
    path.reserve(c.frames_.size());
    for (const auto& f : c.frames_) path.emplace_back(f.cell, f.to_mid);
    prefixes.push_back(std::move(path));
    return;
  }
  note_visit(c, stats);
  visit(static_cast<const WalkCursor&>(c));
  int n = 0;
  const auto cells = next_cells(c, &n);
  for (int t = 0; t < n; ++t) {
    for (const Exit& ex : exits_for(cells[t].cell, cells[t].side)) {
      if (!push(c, cells[t].cell, ex)) continue;
      collect(c, depth, visit, stats, prefixes);
      pop(c);
    }
  }
}

template <class Acc, class Visit, class Merge>
Acc WalkEnumerator::run_partitioned(const Acc& init, Visit visit, Merge merge,
                                    EnumerationStats* stats_out) const {
  Acc total = init;
  EnumerationStats head_stats;
  std::vector<std::vector<std::pair<int, int>>> prefixes;
  {
    WalkCursor cur = fresh_cursor();
    auto head_visit = [&](const WalkCursor& w) { visit(total, w); };
    collect(cur, std::max(0, options_.prefix_depth), head_visit, head_stats, prefixes);
  }

  std::vector<Acc> parts(prefixes.size(), init);
  std::vector<EnumerationStats> part_stats(prefixes.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t p = next++; p < prefixes.size(); p = next++) {
      WalkCursor cur = fresh_cursor();
      for (const auto& [cell, mid] : prefixes[p]) replay(cur, cell, mid);
      auto v = [&](const WalkCursor& w) { visit(parts[p], w); };
      dfs(cur, v, part_stats[p]);
    }
  };
  const int threads = std::max(1, options_.threads);
  if (threads == 1 || prefixes.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  EnumerationStats stats = head_stats;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    merge(total, parts[p]);
    stats.walks += part_stats[p].walks;
    stats.max_depth = std::max(stats.max_depth, part_stats[p].max_depth);
  }
  if (options_.max_walks != 0 && stats.walks > options_.max_walks) {
    throw BudgetExceeded("walk budget exceeded");
  }
  if (stats_out) *stats_out = stats;
  return total;
}

// ---- weighted walk counts ---------------------------------------------

// Sums of walk weights by exact rule-length, 0..max_length, on the free lattice.
std::vector<double> weight_sums_by_length(const WeightSet& w, const LengthRule& rule,
                                          int max_length, MidEdge origin = H(0, 0),
                                          EnumerateOptions options = {});

// c~_0 .. c~_{n_max} with the critical weights at theta.
std::vector<double> c_tilde_series(int n_max, const LatticeAngle& theta,
                                   const LengthRule& rule = LengthRule::arcs(),
                                   MidEdge origin = H(0, 0), EnumerateOptions options = {});

double c_tilde(int n, const LatticeAngle& theta, const LengthRule& rule = LengthRule::arcs());

}  // namespace rhombsaw
