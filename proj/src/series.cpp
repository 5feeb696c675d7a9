#include "rhombsaw/series.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace rhombsaw {

bool SeriesReport::positive() const {
  return std::all_of(c_tilde.begin(), c_tilde.end(), [](double c) { return c > 0; });
}

bool SeriesReport::lower_bound_holds() const {
  for (int n = 0; n <= n_max; ++n) {
    if (c_tilde[n] < lower_sequence[n] * (1 - 1e-12)) return false;
  }
  return true;
}

bool SeriesReport::bracket_holds() const {
  for (int n = 1; n <= n_max; ++n) {
    if (root_estimates[n] < lower_bracket[n] * (1 - 1e-12)) return false;
    if (root_estimates[n] > upper_bracket * (1 + 1e-12)) return false;
  }
  return true;
}

bool SeriesReport::submultiplicative(int max_sum) const {
  for (int n = 1; n <= n_max; ++n) {
    for (int m = 1; n + m <= std::min(max_sum, n_max); ++m) {
      if (c_tilde[n + m] > c_tilde[n] * c_tilde[m] * (1 + 1e-12)) return false;
    }
  }
  return true;
}

bool SeriesReport::ratios_approach_target() const {
  if (n_max < 4) return false;
  const double first = std::abs(ratio_estimates[1] - target);
  for (int n = n_max - 2; n <= n_max; ++n) {
    if (!(std::abs(ratio_estimates[n] - target) < first)) return false;
  }
  return true;
}

SeriesReport series_report(const LatticeAngle& theta, const LengthRule& rule, int n_max,
                           MidEdge origin, EnumerateOptions options) {
  if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
  rule.validate();
  const WeightSet w = critical_weights(theta);
  SeriesReport r;
  r.theta = theta.radians();
  r.rule = rule;
  r.n_max = n_max;
  r.c_tilde = c_tilde_series(n_max, theta, rule, origin, options);
  r.target = 1 / w.u1;
  r.upper_bracket = n_max >= 1 ? r.c_tilde[1] : 0.0;
  r.root_estimates.assign(n_max + 1, 0.0);
  r.ratio_estimates.assign(n_max + 1, 0.0);
  r.lower_bracket.assign(n_max + 1, 0.0);
  r.lower_sequence.assign(n_max + 1, 0.0);

  const int s = rule.straight;
  const double ratio = w.v / std::pow(w.u1, s);
  for (int n = 0; n <= n_max; ++n) {
    double b = n == 0 ? 1.0 : r.lower_sequence[n - 1];
    if (n >= s) b += ratio * r.lower_sequence[n - s];
    r.lower_sequence[n] = b;
    if (n >= 1) {
      r.root_estimates[n] = std::pow(r.c_tilde[n], 1.0 / n);
      r.ratio_estimates[n] = r.c_tilde[n] / r.c_tilde[n - 1];
      r.lower_bracket[n] = std::pow(b, 1.0 / n);
    }
  }
  return r;
}

// ---- honeycomb oracle ----------------------------------------------------

namespace {

// Brick-wall honeycomb: vertices (x, y), horizontal edges between (x, y) and
// (x + 1, y), and a vertical edge up from (x, y) when x + y is even.
struct Hex {
  int x, y;
  bool operator==(const Hex& o) const { return x == o.x && y == o.y; }
};

struct HexEdge {
  Hex a, b;  // a < b in (x, y) order
};

HexEdge make_edge(Hex p, Hex q) {
  if (q.x < p.x || (q.x == p.x && q.y < p.y)) std::swap(p, q);
  return {p, q};
}

bool same_edge(const HexEdge& e, const HexEdge& f) { return e.a == f.a && e.b == f.b; }

// 0: vertical, 1: horizontal with x + y even at the left end, 2: the rest.
int edge_class(const HexEdge& e) {
  if (e.a.x == e.b.x) return 0;
  return ((e.a.x + e.a.y) % 2 == 0) ? 1 : 2;
}

std::array<Hex, 3> neighbours(Hex p) {
  const bool up = ((p.x + p.y) % 2 + 2) % 2 == 0;
  return {Hex{p.x - 1, p.y}, Hex{p.x + 1, p.y}, Hex{p.x, up ? p.y + 1 : p.y - 1}};
}

struct HexWalker {
  int n_max;
  int excluded_class;
  HexEdge start;
  std::vector<std::uint64_t> counts;
  std::set<std::pair<int, int>> visited;

  void walk(Hex v, const HexEdge& came_by, int k) {
    for (const Hex& u : neighbours(v)) {
      const HexEdge e = make_edge(v, u);
      if (same_edge(e, came_by) || same_edge(e, start)) continue;
      if (edge_class(e) != excluded_class) ++counts[k];
      if (k == n_max || visited.count({u.x, u.y})) continue;
      visited.insert({u.x, u.y});
      walk(u, e, k + 1);
      visited.erase({u.x, u.y});
    }
  }
};

}  // namespace

std::vector<std::uint64_t> honeycomb_mid_edge_counts(int n_max) {
  if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
  HexWalker w{n_max, 1, make_edge({0, 0}, {0, 1}), std::vector<std::uint64_t>(n_max + 1, 0), {}};
  w.counts[0] = 1;
  if (n_max == 0) return w.counts;
  for (const Hex& v : {Hex{0, 0}, Hex{0, 1}}) {
    w.visited = {{v.x, v.y}};
    w.walk(v, w.start, 1);
  }
  return w.counts;
}

std::vector<std::pair<Rhombus, int>> triangle_image(const Walk& walk) {
  auto half = [](int side) { return (side == 3 || side == 0) ? 0 : 1; };
  std::vector<std::pair<Rhombus, int>> out;
  for (const Step& s : walk.steps()) {
    const int a = half(s.from_side()), b = half(s.to_side());
    out.emplace_back(s.rhombus, a);
    if (b != a) out.emplace_back(s.rhombus, b);
  }
  return out;
}

double HoneycombReport::max_rel_error() const {
  double m = 0;
  for (const auto& r : rows) m = std::max(m, r.rel_error);
  return m;
}

bool HoneycombReport::ok(double tol) const {
  return image_failures == 0 && w2_max_weight < 1e-15 && max_rel_error() <= tol;
}

HoneycombReport honeycomb_crosscheck(int n_max, EnumerateOptions options) {
  if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
  const LatticeAngle theta(kPi / 3);
  const WeightSet w = critical_weights(theta);
  const LengthRule rule = LengthRule::honeycomb();
  const auto e = WalkEnumerator::free_lattice(H(0, 0), rule, w, n_max, options);

  struct Acc {
    std::vector<double> sums;
    std::uint64_t checked = 0, failures = 0, w2 = 0;
    double w2_weight = 0;
  };
  const Acc acc = e.run_partitioned(
      Acc{std::vector<double>(n_max + 1, 0.0)},
      [&](Acc& a, const WalkCursor& c) {
        a.sums[c.length()] += c.weight();
        const Walk walk = c.to_walk();
        const auto& occ = walk.occupancy();
        const bool has_w2 = std::any_of(occ.begin(), occ.end(), [](const auto& kv) {
          return kv.second == PlaquetteState::DoubleArcPiMinusTheta;
        });
        if (has_w2) {
          // reuses both triangles of the rhombus; only its weight matters
          ++a.w2;
          a.w2_weight = std::max(a.w2_weight, std::abs(c.weight()));
          return;
        }
        const auto image = triangle_image(walk);
        const std::set<std::pair<Rhombus, int>> distinct(image.begin(), image.end());
        ++a.checked;
        if (distinct.size() != image.size() || static_cast<int>(image.size()) != c.length()) {
          ++a.failures;
        }
      },
      [](Acc& total, const Acc& part) {
        for (std::size_t k = 0; k < total.sums.size(); ++k) total.sums[k] += part.sums[k];
        total.checked += part.checked;
        total.failures += part.failures;
        total.w2 += part.w2;
        total.w2_weight = std::max(total.w2_weight, part.w2_weight);
      });

  const auto counts = honeycomb_mid_edge_counts(n_max);
  HoneycombReport rep;
  rep.u1 = w.u1;
  rep.walks_checked = acc.checked;
  rep.image_failures = acc.failures;
  rep.w2_walks = acc.w2;
  rep.w2_max_weight = acc.w2_weight;
  for (int n = 0; n <= n_max; ++n) {
    HoneycombRow row;
    row.n = n;
    row.weighted_sum = acc.sums[n];
    row.oracle_count = counts[n];
    row.expected = std::pow(w.u1, n) * static_cast<double>(counts[n]);
    row.rel_error = row.expected == 0 ? std::abs(row.weighted_sum)
                                      : std::abs(row.weighted_sum - row.expected) / row.expected;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace rhombsaw
