#include "rhombsaw/enumerate.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rhombsaw {

namespace {

PlaquetteState single_arc(int corner) {
  switch (corner) {
    case 0: return PlaquetteState::ArcSW;
    case 1: return PlaquetteState::ArcSE;
    case 2: return PlaquetteState::ArcNE;
    default: return PlaquetteState::ArcNW;
  }
}

int arc_corner(PlaquetteState s) {
  switch (s) {
    case PlaquetteState::ArcSW: return 0;
    case PlaquetteState::ArcSE: return 1;
    case PlaquetteState::ArcNE: return 2;
    case PlaquetteState::ArcNW: return 3;
    default: return -1;
  }
}

// transition[state][a][b], -1 for inadmissible.
struct TransitionTable {
  std::array<std::array<std::array<std::int8_t, 4>, 4>, kPlaquetteStateCount> next{};

  TransitionTable() {
    for (int s = 0; s < kPlaquetteStateCount; ++s) {
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          next[s][a][b] = -1;
          if (a == b) continue;
          if (auto r = compute(static_cast<PlaquetteState>(s), a, b)) {
            next[s][a][b] = static_cast<std::int8_t>(*r);
          }
        }
      }
    }
  }

  static std::optional<PlaquetteState> compute(PlaquetteState s, int a, int b) {
    const SidePassage p = classify_passage(a, b);
    if (s == PlaquetteState::Empty) {
      if (p.kind == StepKind::Straight) {
        return (a % 2 == 0) ? PlaquetteState::StraightA : PlaquetteState::StraightB;
      }
      return single_arc(p.corner);
    }
    const int c = arc_corner(s);
    if (c < 0 || p.kind == StepKind::Straight || p.corner != (c + 2) % 4) return std::nullopt;
    return (c % 2 == 0) ? PlaquetteState::DoubleArcTheta : PlaquetteState::DoubleArcPiMinusTheta;
  }
};

const TransitionTable& transitions() {
  static const TransitionTable table;
  return table;
}

}  // namespace

const char* to_string(PlaquetteState s) {
  switch (s) {
    case PlaquetteState::Empty: return "empty";
    case PlaquetteState::ArcSW: return "arc-SW";
    case PlaquetteState::ArcSE: return "arc-SE";
    case PlaquetteState::ArcNE: return "arc-NE";
    case PlaquetteState::ArcNW: return "arc-NW";
    case PlaquetteState::StraightA: return "straight-A";
    case PlaquetteState::StraightB: return "straight-B";
    case PlaquetteState::DoubleArcTheta: return "double-theta";
    case PlaquetteState::DoubleArcPiMinusTheta: return "double-pi-minus-theta";
  }
  return "?";
}

std::optional<PlaquetteState> add_passage(PlaquetteState s, int side_a, int side_b) {
  if (side_a < 0 || side_a > 3 || side_b < 0 || side_b > 3 || side_a == side_b) return std::nullopt;
  const int r = transitions().next[static_cast<int>(s)][side_a][side_b];
  if (r < 0) return std::nullopt;
  return static_cast<PlaquetteState>(r);
}

std::vector<int> occupied_sides(PlaquetteState s) {
  switch (s) {
    case PlaquetteState::Empty: return {};
    case PlaquetteState::ArcSW: return {3, 0};
    case PlaquetteState::ArcSE: return {0, 1};
    case PlaquetteState::ArcNE: return {1, 2};
    case PlaquetteState::ArcNW: return {2, 3};
    case PlaquetteState::StraightA: return {0, 2};
    case PlaquetteState::StraightB: return {1, 3};
    default: return {0, 1, 2, 3};
  }
}

double state_weight(PlaquetteState s, const WeightSet& w) {
  switch (s) {
    case PlaquetteState::Empty: return 1.0;
    case PlaquetteState::ArcSW:
    case PlaquetteState::ArcNE: return w.u1;
    case PlaquetteState::ArcSE:
    case PlaquetteState::ArcNW: return w.u2;
    case PlaquetteState::StraightA:
    case PlaquetteState::StraightB: return w.v;
    case PlaquetteState::DoubleArcTheta: return w.w1;
    case PlaquetteState::DoubleArcPiMinusTheta: return w.w2;
  }
  return 0.0;
}

void LengthRule::validate() const {
  if (theta_arc < 1 || pi_minus_theta_arc < 1 || straight < 1) {
    throw std::invalid_argument("length rule entries must be positive integers");
  }
}

// ---- Walk ----------------------------------------------------------------

bool Walk::try_extend(const Step& step) {
  if (step.from != end()) return false;
  const auto a = step.rhombus.side_index(step.from);
  const auto b = step.rhombus.side_index(step.to);
  if (!a || !b || *a == *b) return false;
  if (classify_passage(*a, *b).kind != step.kind) return false;
  if (!steps_.empty() && steps_.back().rhombus == step.rhombus) return false;
  if (visits(step.to)) return false;

  auto it = occupancy_.find(step.rhombus);
  const PlaquetteState cur = it == occupancy_.end() ? PlaquetteState::Empty : it->second;
  const auto next = add_passage(cur, *a, *b);
  if (!next) return false;

  occupancy_[step.rhombus] = *next;
  visited_.insert(step.to);
  steps_.push_back(step);
  return true;
}

Walk Walk::from_steps(MidEdge start, const std::vector<Step>& steps) {
  Walk w(start);
  for (std::size_t k = 0; k < steps.size(); ++k) {
    if (!w.try_extend(steps[k])) {
      throw std::invalid_argument("step " + std::to_string(k) + " (" + to_string(steps[k].from) +
                                  " > " + to_string(steps[k].to) + ") breaks the walk");
    }
  }
  return w;
}

Winding Walk::winding() const {
  Winding total;
  for (const Step& s : steps_) total += s.turn();
  return total;
}

double weight_of(const Walk& walk, const WeightSet& w) {
  double product = 1.0;
  for (const auto& [r, s] : walk.occupancy()) product *= state_weight(s, w);
  return product;
}

int length_of(const Walk& walk, const LengthRule& rule) {
  int total = 0;
  for (const Step& s : walk.steps()) total += rule.length(s.kind);
  return total;
}

std::string format_walk(const Walk& walk) {
  std::string out = to_string(walk.start()) + ";";
  bool first = true;
  for (const Step& s : walk.steps()) {
    if (!first) out += ",";
    first = false;
    out += to_string(s.from) + ">" + to_string(s.to);
  }
  return out;
}

namespace {

int parse_int(const std::string& tok) {
  std::size_t used = 0;
  const int v = std::stoi(tok, &used);
  if (used != tok.size()) throw std::invalid_argument("bad integer '" + tok + "'");
  return v;
}

Orient parse_orient(const std::string& tok) {
  if (tok == "H") return Orient::H;
  if (tok == "V") return Orient::V;
  throw std::invalid_argument("bad orientation '" + tok + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

Walk parse_walk(const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos) throw std::invalid_argument("walk dump lacks ';'");
  const auto head = split(text.substr(0, semi), ',');
  if (head.size() != 3) throw std::invalid_argument("bad start mid-edge");
  const MidEdge start{parse_int(head[0]), parse_int(head[1]), parse_orient(head[2])};

  std::vector<Step> steps;
  const std::string body = text.substr(semi + 1);
  if (!body.empty()) {
    const auto tok = split(body, ',');
    if (tok.size() % 5 != 0) throw std::invalid_argument("bad step list");
    for (std::size_t k = 0; k < tok.size(); k += 5) {
      const auto mid = split(tok[k + 2], '>');
      if (mid.size() != 2) throw std::invalid_argument("bad step '" + tok[k + 2] + "'");
      const MidEdge from{parse_int(tok[k]), parse_int(tok[k + 1]), parse_orient(mid[0])};
      const MidEdge to{parse_int(mid[1]), parse_int(tok[k + 3]), parse_orient(tok[k + 4])};
      try {
        steps.push_back(make_step(from, to));
      } catch (const GeometryError& e) {
        throw std::invalid_argument(e.what());
      }
    }
  }
  return Walk::from_steps(start, steps);
}

// ---- WalkCursor ------------------------------------------------------------

int WalkCursor::end_id() const { return current_; }

const MidEdge& WalkCursor::end() const { return owner_->region().label(current_); }

Walk WalkCursor::to_walk() const {
  const LatticeGraph& g = owner_->region();
  Walk w(g.label(start_));
  int prev = start_;
  for (const Frame& f : frames_) {
    const Rhombus r = g.rhombus(f.cell);
    const MidEdge from = g.label(prev);
    const MidEdge to = g.label(f.to_mid);
    const SidePassage p = classify_passage(*r.side_index(from), *r.side_index(to));
    if (!w.try_extend(Step{r, from, to, p.kind})) throw GeometryError("cursor holds an invalid walk");
    prev = f.to_mid;
  }
  return w;
}

double WalkCursor::recomputed_weight() const { return owner_->recompute(*this); }

// ---- WalkEnumerator ----------------------------------------------------------

WalkEnumerator::WalkEnumerator(const LatticeGraph& region, MidEdge start, LengthRule rule,
                               std::vector<WeightSet> weights, int max_length,
                               EnumerateOptions options)
    : region_(&region), rule_(rule), weights_(std::move(weights)), max_length_(max_length),
      options_(options) {
  rule_.validate();
  if (max_length < 0) throw std::invalid_argument("max_length must be non-negative");
  if (weights_.empty()) throw std::invalid_argument("no weight set given");
  auto id = region.id(start);
  if (!id) throw std::invalid_argument("start mid-edge " + to_string(start) + " outside region");
  start_ = *id;

  const RhombicGraph& g = region.graph();
  exits_.resize(static_cast<std::size_t>(g.cell_count()) * 4);
  for (int c = 0; c < g.cell_count(); ++c) {
    if (g.cells[c].weight_slot >= static_cast<int>(weights_.size())) {
      throw std::invalid_argument("cell weight slot without a weight set");
    }
    for (int k = 0; k < 4; ++k) {
      std::array<Exit, 3> ex{};
      for (int d = 1; d <= 3; ++d) {
        const int e = (k + d) & 3;
        const SidePassage p = classify_passage(k, e);
        ex[d - 1] = Exit{k, e, g.cells[c].side[e], p.corner, p.kind, p.turn};
      }
      std::sort(ex.begin(), ex.end(), [&](const Exit& a, const Exit& b) {
        return region.label(a.mid) < region.label(b.mid);
      });
      exits_[static_cast<std::size_t>(c) * 4 + k] = ex;
    }
  }
  for (const WeightSet& w : weights_) {
    std::array<double, kPlaquetteStateCount> sw{};
    for (int s = 0; s < kPlaquetteStateCount; ++s) sw[s] = state_weight(static_cast<PlaquetteState>(s), w);
    state_weight_.push_back(sw);
  }
}

WalkEnumerator WalkEnumerator::free_lattice(MidEdge start, LengthRule rule, const WeightSet& w,
                                            int max_length, EnumerateOptions options) {
  rule.validate();
  if (max_length > options.max_length_cap) {
    throw BudgetExceeded("max_length " + std::to_string(max_length) + " exceeds the step budget " +
                         std::to_string(options.max_length_cap));
  }
  const int max_steps = std::max(0, max_length) / rule.min_length();
  auto owned = std::make_shared<LatticeGraph>(LatticeGraph::window(rhombi_of(start)[1], max_steps + 1));
  WalkEnumerator e(*owned, start, rule, {w}, max_length, options);
  e.owned_ = std::move(owned);
  e.free_ = true;
  return e;
}

WalkCursor WalkEnumerator::fresh_cursor() const {
  const RhombicGraph& g = region_->graph();
  WalkCursor c;
  c.owner_ = this;
  c.start_ = start_;
  c.current_ = start_;
  c.states_.assign(g.cell_count(), PlaquetteState::Empty);
  c.visited_.assign((g.mid_edge_count() + 63) / 64, 0);
  c.frames_.reserve(64);
  flip(c, start_);
  return c;
}

std::array<RhombicGraph::Incidence, 2> WalkEnumerator::next_cells(const WalkCursor& c,
                                                                  int* count) const {
  const auto& inc = region_->graph().incidences[c.current_];
  std::array<RhombicGraph::Incidence, 2> out{};
  int n = 0;
  const int came_from = c.frames_.empty() ? -1 : c.frames_.back().cell;
  for (const auto& i : inc) {
    if (i.cell >= 0 && i.cell != came_from) out[n++] = i;
  }
  // After the first step only the far cell remains.
  *count = n;
  return out;
}

bool WalkEnumerator::push(WalkCursor& c, int cell, const Exit& ex) const {
  if (visited(c, ex.mid)) return false;
  const int added = rule_.length(ex.kind);
  if (c.length_ + added > max_length_) return false;
  const PlaquetteState prev = c.states_[cell];
  const int next = transitions().next[static_cast<int>(prev)][ex.entry][ex.side];
  if (next < 0) return false;

  const auto& sw = state_weight_[region_->graph().cells[cell].weight_slot];
  c.frames_.push_back({cell, ex.mid, prev, c.weight_, ex.turn, added});
  c.states_[cell] = static_cast<PlaquetteState>(next);
  if (prev == PlaquetteState::Empty) {
    c.weight_ *= sw[next];
  } else if (sw[static_cast<int>(prev)] != 0.0) {
    c.weight_ = c.weight_ / sw[static_cast<int>(prev)] * sw[next];
  } else {
    c.weight_ = recompute(c);
  }
  c.winding_ += ex.turn;
  c.length_ += added;
  c.current_ = ex.mid;
  flip(c, ex.mid);
  return true;
}

void WalkEnumerator::pop(WalkCursor& c) const {
  const WalkCursor::Frame f = c.frames_.back();
  c.frames_.pop_back();
  flip(c, f.to_mid);
  c.states_[f.cell] = f.prev_state;
  c.weight_ = f.prev_weight;
  c.winding_ -= f.turn;
  c.length_ -= f.added_length;
  c.current_ = c.frames_.empty() ? c.start_ : c.frames_.back().to_mid;
}

void WalkEnumerator::replay(WalkCursor& c, int cell, int mid) const {
  int n = 0;
  const auto cells = next_cells(c, &n);
  for (int t = 0; t < n; ++t) {
    if (cells[t].cell != cell) continue;
    for (const Exit& ex : exits_for(cell, cells[t].side)) {
      if (ex.mid == mid && push(c, cell, ex)) return;
    }
  }
  throw GeometryError("prefix replay failed");
}

double WalkEnumerator::recompute(const WalkCursor& c) const {
  const RhombicGraph& g = region_->graph();
  double product = 1.0;
  for (const auto& f : c.frames_) {
    if (f.prev_state != PlaquetteState::Empty) continue;
    const auto& sw = state_weight_[g.cells[f.cell].weight_slot];
    product *= sw[static_cast<int>(c.states_[f.cell])];
  }
  return product;
}

void WalkEnumerator::note_visit(const WalkCursor& c, EnumerationStats& stats) const {
  ++stats.walks;
  stats.max_depth = std::max(stats.max_depth, c.steps());
  if (options_.max_walks != 0 && stats.walks > options_.max_walks) {
    throw BudgetExceeded("walk budget of " + std::to_string(options_.max_walks) + " exceeded");
  }
  if (free_ && c.current_ != c.start_ && region_->graph().is_boundary(c.current_)) {
    throw GeometryError("free-lattice window too small");
  }
}

// ---- weighted counts ---------------------------------------------------------

std::vector<double> weight_sums_by_length(const WeightSet& w, const LengthRule& rule,
                                          int max_length, MidEdge origin,
                                          EnumerateOptions options) {
  const auto e = WalkEnumerator::free_lattice(origin, rule, w, max_length, options);
  using Sums = std::vector<double>;
  return e.run_partitioned(
      Sums(max_length + 1, 0.0),
      [](Sums& acc, const WalkCursor& c) { acc[c.length()] += c.weight(); },
      [](Sums& total, const Sums& part) {
        for (std::size_t k = 0; k < total.size(); ++k) total[k] += part[k];
      });
}

std::vector<double> c_tilde_series(int n_max, const LatticeAngle& theta, const LengthRule& rule,
                                   MidEdge origin, EnumerateOptions options) {
  const WeightSet w = critical_weights(theta);
  auto sums = weight_sums_by_length(w, rule, n_max, origin, options);
  for (int n = 0; n <= n_max; ++n) sums[n] /= std::pow(w.u1, n);
  return sums;
}

double c_tilde(int n, const LatticeAngle& theta, const LengthRule& rule) {
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  return c_tilde_series(n, theta, rule).back();
}

}  // namespace rhombsaw
