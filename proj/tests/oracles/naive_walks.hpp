#pragma once

// Brute-force walk enumerator with its own lattice bookkeeping. No pruning and
// no incremental weights: every walk is rebuilt into plaquette contents and
// weighed from scratch.

#include <algorithm>
#include <array>
#include <map>
#include <utility>
#include <vector>

namespace oracle {

struct Mid {
  int i, j;
  char o;  // 'H' or 'V'
  auto operator<=>(const Mid&) const = default;
};

struct Sq {
  int i, j;
  auto operator<=>(const Sq&) const = default;
};

inline Mid side(Sq r, int k) {
  switch (k) {
    case 0: return {r.i, r.j, 'H'};
    case 1: return {r.i + 1, r.j, 'V'};
    case 2: return {r.i, r.j + 1, 'H'};
    default: return {r.i, r.j, 'V'};
  }
}

// Squares holding m, with m's side index in each.
inline std::array<std::pair<Sq, int>, 2> squares(Mid m) {
  if (m.o == 'H') return {{{{m.i, m.j - 1}, 2}, {{m.i, m.j}, 0}}};
  return {{{{m.i - 1, m.j}, 1}, {{m.i, m.j}, 3}}};
}

struct Weights {
  double u1, u2, v, w1, w2;
};

using Pair = std::pair<int, int>;

inline Pair norm(int a, int b) { return a < b ? Pair{a, b} : Pair{b, a}; }

// Content of one square: 0 = not allowed, otherwise the weight.
inline bool allowed(std::vector<Pair> ps) {
  if (ps.size() <= 1) return true;
  if (ps.size() > 2) return false;
  std::sort(ps.begin(), ps.end());
  const std::vector<Pair> theta2 = {{0, 3}, {1, 2}}, pi2 = {{0, 1}, {2, 3}};
  std::vector<Pair> t = theta2, p = pi2;
  std::sort(t.begin(), t.end());
  std::sort(p.begin(), p.end());
  return ps == t || ps == p;
}

inline double content_weight(const std::vector<Pair>& ps, const Weights& w) {
  if (ps.empty()) return 1.0;
  if (ps.size() == 2) {
    const bool has03 = std::find(ps.begin(), ps.end(), Pair{0, 3}) != ps.end();
    return has03 ? w.w1 : w.w2;
  }
  const Pair p = ps[0];
  if (p == Pair{0, 3} || p == Pair{1, 2}) return w.u1;
  if (p == Pair{0, 1} || p == Pair{2, 3}) return w.u2;
  return w.v;
}

struct Result {
  std::vector<long long> count;
  std::vector<double> weight;
};

struct Walker {
  Weights w;
  int n_max;
  Result res;
  std::vector<Mid> path;
  std::vector<Sq> through;  // square used by each step
  std::map<Sq, std::vector<Pair>> content;

  void record() {
    const int n = static_cast<int>(through.size());
    double prod = 1.0;
    for (const auto& [sq, ps] : content) prod *= content_weight(ps, w);
    ++res.count[n];
    res.weight[n] += prod;
  }

  void go() {
    record();
    if (static_cast<int>(through.size()) == n_max) return;
    const Mid cur = path.back();
    for (const auto& [sq, k] : squares(cur)) {
      if (!through.empty() && through.back() == sq) continue;
      for (int k2 = 0; k2 < 4; ++k2) {
        if (k2 == k) continue;
        const Mid next = side(sq, k2);
        if (std::find(path.begin(), path.end(), next) != path.end()) continue;
        auto& ps = content[sq];
        ps.push_back(norm(k, k2));
        if (allowed(ps)) {
          path.push_back(next);
          through.push_back(sq);
          go();
          path.pop_back();
          through.pop_back();
        }
        ps.pop_back();
        if (ps.empty()) content.erase(sq);
      }
    }
  }
};

// Walk counts and weight sums by number of steps, 0..n_max.
inline Result enumerate(Mid start, int n_max, const Weights& w) {
  Walker k{w, n_max, {std::vector<long long>(n_max + 1, 0), std::vector<double>(n_max + 1, 0.0)},
           {start}, {}, {}};
  k.go();
  return k.res;
}

}  // namespace oracle
