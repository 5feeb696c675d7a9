#include "rhombsaw/observable.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rhombsaw {

namespace {

using Values = std::vector<Complex>;

void add_into(Values& total, const Values& part) {
  for (std::size_t k = 0; k < total.size(); ++k) total[k] += part[k];
}

// Corner k of r in the embedding.
Point corner(const Rhombus& r, int k, const LatticeAngle& theta) {
  switch (k & 3) {
    case 0: return lattice_point(r.i, r.j, theta);
    case 1: return lattice_point(r.i + 1, r.j, theta);
    case 2: return lattice_point(r.i + 1, r.j + 1, theta);
    default: return lattice_point(r.i, r.j + 1, theta);
  }
}

}  // namespace

ObservableTable::ObservableTable(ParallelogramDomain domain, double sigma,
                                 std::vector<Complex> values,
                                 std::shared_ptr<const LatticeGraph> graph)
    : domain_(domain), sigma_(sigma), values_(std::move(values)), graph_(std::move(graph)) {}

Complex ObservableTable::at(const MidEdge& z) const {
  auto id = graph_->id(z);
  if (!id) throw std::out_of_range("mid-edge " + to_string(z) + " outside the domain");
  return values_[*id];
}

std::vector<std::pair<MidEdge, Complex>> ObservableTable::entries() const {
  std::vector<std::pair<MidEdge, Complex>> out;
  out.reserve(values_.size());
  for (std::size_t k = 0; k < values_.size(); ++k) {
    out.emplace_back(graph_->label(static_cast<int>(k)), values_[k]);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

ObservableTable observable(const ParallelogramDomain& domain, double sigma, const WeightSet& w,
                           EnumerateOptions options) {
  auto graph = std::make_shared<const LatticeGraph>(LatticeGraph::of(domain));
  const int n_mid = graph->graph().mid_edge_count();
  const WalkEnumerator e(*graph, domain.origin(), LengthRule::arcs(), {w}, n_mid, options);
  const double theta = domain.theta().radians();
  Values values = e.run_partitioned(
      Values(n_mid, Complex{0, 0}),
      [&](Values& acc, const WalkCursor& c) {
        acc[c.end_id()] += c.weight() * std::polar(1.0, -sigma * c.winding().radians(theta));
      },
      add_into);
  return ObservableTable(domain, sigma, std::move(values), std::move(graph));
}

Complex cr_residual(const ObservableTable& table, const Rhombus& r) {
  if (!table.domain().contains(r)) throw std::out_of_range("rhombus outside the domain");
  const Complex e = std::polar(1.0, table.domain().theta().radians());
  return table.at(r.side(0)) + e * table.at(r.side(1)) - table.at(r.side(2)) -
         e * table.at(r.side(3));
}

double max_cr_residual(const ObservableTable& table) {
  double m = 0;
  for (const Rhombus& r : table.domain().rhombi()) m = std::max(m, std::abs(cr_residual(table, r)));
  return m;
}

Complex boundary_relation(const ObservableTable& table) {
  const ParallelogramDomain& d = table.domain();
  const LatticeAngle& theta = d.theta();
  Complex sum{0, 0};
  for (const Rhombus& r : d.rhombi()) {
    for (int k = 0; k < 4; ++k) {
      const MidEdge z = r.side(k);
      if (d.side_of(z) == Side::Interior) continue;
      sum += table.at(z) * (corner(r, k + 1, theta) - corner(r, k, theta));
    }
  }
  const Point d0 = entry_direction(d.origin(), d.origin_rhombus(), theta);
  return sum / (Complex(0, 1) * d0);
}

ParallelogramCoefficients parallelogram_coefficients(const LatticeAngle& theta) {
  const double t = theta.radians();
  return {std::cos(3 * kPi / 8), std::cos(3 * t / 8), std::cos(3 * (kPi - t) / 8)};
}

StripSums strip_sums(int T, int L, double x, const LatticeAngle& theta, EnumerateOptions options) {
  const ParallelogramDomain domain(T, L, theta);
  const LatticeGraph graph = LatticeGraph::of(domain);
  const int n_mid = graph.graph().mid_edge_count();
  std::vector<Side> side(n_mid);
  for (int k = 0; k < n_mid; ++k) side[k] = domain.side_of(graph.label(k));

  const WeightSet w = at_fugacity(critical_weights(theta), x);
  const WalkEnumerator e(graph, domain.origin(), LengthRule::arcs(), {w}, n_mid, options);
  using Acc = std::array<double, 5>;
  const Acc sums = e.run_partitioned(
      Acc{},
      [&](Acc& acc, const WalkCursor& c) {
        if (c.steps() == 0) return;
        acc[static_cast<int>(side[c.end_id()])] += c.weight();
      },
      [](Acc& total, const Acc& part) {
        for (int k = 0; k < 5; ++k) total[k] += part[k];
      });

  StripSums s;
  s.T = T;
  s.L = L;
  s.theta = theta.radians();
  s.x = x;
  s.A = sums[static_cast<int>(Side::Alpha)];
  s.B = sums[static_cast<int>(Side::Beta)];
  s.D = sums[static_cast<int>(Side::Delta)];
  s.E = sums[static_cast<int>(Side::Epsilon)];
  return s;
}

double parallelogram_lhs(const StripSums& s, const LatticeAngle& theta) {
  const auto c = parallelogram_coefficients(theta);
  return c.alpha * s.A + s.B + c.delta * s.D + c.epsilon * s.E;
}

double parallelogram_identity_residual(int T, int L, const LatticeAngle& theta,
                                       EnumerateOptions options) {
  const double xc = critical_weights(theta).u1;
  return std::abs(parallelogram_lhs(strip_sums(T, L, xc, theta, options), theta) - 1.0);
}

bool StripLimits::tail_strictly_decreasing() const {
  for (std::size_t k = 1; k < tail.size(); ++k) {
    if (!(tail[k] < tail[k - 1])) return false;
  }
  return true;
}

bool StripLimits::growth_holds() const {
  // equality at T = 1, so rounding can push the margin a few ulps below 0
  return std::all_of(growth_margin.begin(), growth_margin.end(), [](double m) { return m >= -1e-12; });
}

bool StripLimits::monotone_in_L() const {
  for (std::size_t k = 1; k < by_L.size(); ++k) {
    if (by_L[k].A < by_L[k - 1].A || by_L[k].B < by_L[k - 1].B) return false;
  }
  return true;
}

StripLimits strip_limits(int T, double x, const LatticeAngle& theta, int L_max,
                         EnumerateOptions options) {
  const WeightSet critical = critical_weights(theta);
  if (x > critical.u1 * (1 + 1e-15)) throw DomainError("strip limits need x <= x_c");
  if (L_max < 0) throw std::invalid_argument("L_max must be non-negative");
  const WeightSet w = at_fugacity(critical, x);

  StripLimits out;
  out.T = T;
  out.x = x;
  out.c_T = std::pow(w.v, T - 1) * std::min(w.u1, w.u2);
  for (int L = 0; L <= L_max; ++L) {
    out.by_L.push_back(strip_sums(T, L, x, theta, options));
    out.tail.push_back(out.by_L.back().D + out.by_L.back().E);
  }
  for (int L = 0; L < L_max; ++L) {
    out.growth_margin.push_back(out.by_L[L + 1].A - out.by_L[L].A - out.c_T * out.tail[L]);
  }
  out.A_T = out.by_L.back().A;
  out.B_T = out.by_L.back().B;
  const auto c = parallelogram_coefficients(theta);
  out.strip_relation_defect = c.alpha * out.A_T + out.B_T - 1.0;
  return out;
}

bool BridgeReport::harmonic_holds() const {
  for (std::size_t k = 0; k < B.size(); ++k) {
    if (B[k] < harmonic_bound[k]) return false;
  }
  return true;
}

bool BridgeReport::recursion_holds() const {
  for (std::size_t k = 1; k < B.size(); ++k) {
    if (B[k] < recursion_bound[k]) return false;
  }
  return true;
}

bool BridgeReport::decay_holds() const {
  for (std::size_t k = 0; k < B_subcritical.size(); ++k) {
    if (B_subcritical[k] > std::pow(subcritical_ratio, static_cast<double>(k + 1))) return false;
  }
  return true;
}

BridgeReport bridge_chain_check(const LatticeAngle& theta, const std::vector<int>& L_max,
                                double subcritical_ratio, EnumerateOptions options) {
  const WeightSet w = critical_weights(theta);
  const auto coeff = parallelogram_coefficients(theta);
  BridgeReport r;
  r.theta = theta.radians();
  r.c = w.u1 * w.u2 / coeff.alpha;
  r.subcritical_ratio = subcritical_ratio;
  r.L_used = L_max;
  for (std::size_t k = 0; k < L_max.size(); ++k) {
    const int T = static_cast<int>(k) + 1;
    r.B.push_back(strip_sums(T, L_max[k], w.u1, theta, options).B);
    r.B_subcritical.push_back(strip_sums(T, L_max[k], subcritical_ratio * w.u1, theta, options).B);
  }
  for (std::size_t k = 0; k < r.B.size(); ++k) {
    r.harmonic_bound.push_back(std::min(r.B[0], r.c) / static_cast<double>(k + 1));
    if (k == 0) {
      r.recursion_bound.push_back(0.0);
    } else {
      const double prev = r.B[k - 1];
      r.recursion_bound.push_back(0.5 * (-r.c + std::sqrt(r.c * r.c + 4 * r.c * prev)));
    }
  }
  return r;
}

}  // namespace rhombsaw
