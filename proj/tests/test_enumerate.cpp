#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles/naive_walks.hpp"
#include "rhombsaw/enumerate.hpp"
#include "rhombsaw/error.hpp"
#include "rhombsaw/weights.hpp"

using namespace rhombsaw;

namespace {

oracle::Weights plain(const WeightSet& w) { return {w.u1, w.u2, w.v, w.w1, w.w2}; }

}  // namespace

TEST_CASE("plaquette transitions") {
  CHECK(add_passage(PlaquetteState::Empty, 3, 0) == PlaquetteState::ArcSW);
  CHECK(add_passage(PlaquetteState::Empty, 1, 0) == PlaquetteState::ArcSE);
  CHECK(add_passage(PlaquetteState::Empty, 0, 2) == PlaquetteState::StraightA);
  CHECK(add_passage(PlaquetteState::Empty, 3, 1) == PlaquetteState::StraightB);
  CHECK(add_passage(PlaquetteState::ArcSW, 1, 2) == PlaquetteState::DoubleArcTheta);
  CHECK(add_passage(PlaquetteState::ArcNW, 0, 1) == PlaquetteState::DoubleArcPiMinusTheta);
  CHECK_FALSE(add_passage(PlaquetteState::ArcSW, 0, 1).has_value());
  CHECK_FALSE(add_passage(PlaquetteState::ArcSW, 1, 3).has_value());
  CHECK_FALSE(add_passage(PlaquetteState::StraightA, 1, 3).has_value());
  CHECK_FALSE(add_passage(PlaquetteState::StraightA, 1, 2).has_value());
  CHECK_FALSE(add_passage(PlaquetteState::DoubleArcTheta, 0, 1).has_value());
}

TEST_CASE("walks up to one step") {
  const WeightSet w = critical_weights(LatticeAngle(kPi / 2));
  const auto e = WalkEnumerator::free_lattice(H(0, 0), LengthRule::arcs(), w, 1);
  std::multiset<double> weights;
  int empty = 0;
  e.run([&](const WalkCursor& c) {
    if (c.steps() == 0) {
      ++empty;
      CHECK(c.weight() == 1.0);
    } else {
      weights.insert(c.weight());
    }
  });
  CHECK(empty == 1);
  CHECK(weights.size() == 6);
  CHECK(weights.count(w.v) == 2);
  // u1 == u2 at pi/2
  CHECK(std::count_if(weights.begin(), weights.end(), [&](double x) { return x == w.u1 || x == w.u2; }) == 4);

  const auto e0 = WalkEnumerator::free_lattice(H(0, 0), LengthRule::arcs(), w, 0);
  int n0 = 0;
  e0.run([&](const WalkCursor&) { ++n0; });
  CHECK(n0 == 1);
}

TEST_CASE("c~ at small n") {
  const LatticeAngle th(kPi / 2);
  const WeightSet w = critical_weights(th);
  CHECK(c_tilde(0, th) == 1.0);
  CHECK(c_tilde(1, th) == doctest::Approx((2 * w.u1 + 2 * w.u2 + 2 * w.v) / w.u1));
  CHECK_THROWS_AS(c_tilde(-1, th), std::invalid_argument);
}

TEST_CASE("main enumerator matches the naive one") {
  for (double t : {kPi / 3, kPi / 2, 2 * kPi / 3}) {
    const LatticeAngle th(t);
    const WeightSet w = critical_weights(th);
    const int n_max = t == kPi / 2 ? 6 : 5;
    for (const auto& [start, plain_start] :
         {std::pair{H(0, 0), oracle::Mid{0, 0, 'H'}}, std::pair{V(0, 0), oracle::Mid{0, 0, 'V'}}}) {
      const auto naive = oracle::enumerate(plain_start, n_max, plain(w));
      std::vector<long long> counts(n_max + 1, 0);
      std::vector<double> sums(n_max + 1, 0.0);
      WalkEnumerator::free_lattice(start, LengthRule::arcs(), w, n_max).run([&](const WalkCursor& c) {
        ++counts[c.length()];
        sums[c.length()] += c.weight();
      });
      for (int n = 0; n <= n_max; ++n) {
        CHECK(counts[n] == naive.count[n]);
        CHECK(sums[n] == doctest::Approx(naive.weight[n]).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("figure walk") {
  const Walk walk = parse_walk(kFigureWalk);
  const WeightSet w = critical_weights(LatticeAngle(kPi / 2));
  CHECK(length_of(walk, LengthRule::arcs()) == 12);
  CHECK(weight_of(walk, w) ==
        doctest::Approx(std::pow(w.u1, 5) * w.u2 * std::pow(w.v, 4) * w.w1).epsilon(1e-14));
  CHECK(walk.occupancy().at(Rhombus{0, 0}) == PlaquetteState::DoubleArcTheta);
  CHECK(format_walk(walk) == kFigureWalk);
  // weight contains w1 once and no u1^2 from the doubled rhombus
  int doubles = 0;
  for (const auto& [r, s] : walk.occupancy()) doubles += s == PlaquetteState::DoubleArcTheta;
  CHECK(doubles == 1);
}

TEST_CASE("dump format round trip") {
  const WeightSet w = critical_weights(LatticeAngle(7 * kPi / 12));
  int n = 0;
  WalkEnumerator::free_lattice(V(1, -1), LengthRule::arcs(), w, 4).run([&](const WalkCursor& c) {
    const Walk walk = c.to_walk();
    const std::string text = format_walk(walk);
    const Walk back = parse_walk(text);
    CHECK(format_walk(back) == text);
    CHECK(weight_of(back, w) == doctest::Approx(c.weight()));
    CHECK(back.end() == c.end());
    ++n;
  });
  CHECK(n > 100);
  CHECK_THROWS_AS(parse_walk("0,0,H"), std::invalid_argument);
  CHECK_THROWS_AS(parse_walk("0,0,H;0,0,H>5,5,H"), std::invalid_argument);
  CHECK_THROWS_AS(parse_walk("0,0,Q;"), std::invalid_argument);
}

TEST_CASE("walk validation") {
  // R(0,0) is crossed twice: a straight, later a crossing straight
  CHECK_THROWS_AS(parse_walk("0,0,H;0,0,H>0,1,H,0,1,H>0,1,V,0,1,V>-1,1,H,-1,1,H>0,0,V,0,0,V>1,0,V"),
                  std::invalid_argument);
  // leaving through the rhombus just used
  const Step s1 = make_step(H(0, 0), H(0, 1));
  CHECK_THROWS_AS(Walk::from_steps(H(0, 0), {s1, make_step(H(0, 1), V(1, 0))}), std::invalid_argument);
  // closing a loop around a vertex returns to the start
  Walk w(H(0, 0));
  CHECK(w.try_extend(make_step(H(0, 0), V(0, 0))));
  CHECK(w.try_extend(make_step(V(0, 0), H(-1, 0))));
  CHECK(w.try_extend(make_step(H(-1, 0), V(0, -1))));
  CHECK_FALSE(w.try_extend(make_step(V(0, -1), H(0, 0))));
  CHECK(w.steps().size() == 3);
}

TEST_CASE("incremental weights equal recomputed ones") {
  for (double t : {kPi / 3, kPi / 2, 2 * kPi / 3}) {
    const WeightSet w = critical_weights(LatticeAngle(t));
    WalkEnumerator::free_lattice(H(0, 0), LengthRule::arcs(), w, 7).run([&](const WalkCursor& c) {
      CHECK(c.weight() == doctest::Approx(c.recomputed_weight()).epsilon(1e-13));
    });
  }
}

TEST_CASE("walks never repeat a mid-edge") {
  const WeightSet w = critical_weights(LatticeAngle(kPi / 2));
  WalkEnumerator::free_lattice(H(0, 0), LengthRule::arcs(), w, 6).run([&](const WalkCursor& c) {
    const Walk walk = c.to_walk();
    std::set<MidEdge> seen{walk.start()};
    for (const Step& s : walk.steps()) CHECK(seen.insert(s.to).second);
  });
}

TEST_CASE("splitting a walk does not decrease its weight bound") {
  const WeightSet w = critical_weights(LatticeAngle(kPi / 2));
  WalkEnumerator::free_lattice(H(0, 0), LengthRule::arcs(), w, 7).run([&](const WalkCursor& c) {
    const Walk walk = c.to_walk();
    const auto& steps = walk.steps();
    for (std::size_t k = 1; k < steps.size(); ++k) {
      const Walk first = Walk::from_steps(walk.start(), {steps.begin(), steps.begin() + k});
      const Walk rest = Walk::from_steps(steps[k].from, {steps.begin() + k, steps.end()});
      CHECK(weight_of(walk, w) <= weight_of(first, w) * weight_of(rest, w) * (1 + 1e-12));
    }
  });
}

TEST_CASE("series properties") {
  for (double t : {kPi / 3, kPi / 2, 2 * kPi / 3}) {
    const LatticeAngle th(t);
    const WeightSet w = critical_weights(th);
    const auto c = c_tilde_series(10, th);
    for (int n = 0; n <= 10; ++n) {
      CHECK(c[n] > 0);
      CHECK(c[n] >= std::pow((w.u1 + w.v) / w.u1, n) * (1 - 1e-12));
      for (int m = 1; n >= 1 && n + m <= 10; ++m) CHECK(c[n + m] <= c[n] * c[m] * (1 + 1e-12));
    }
  }
}

TEST_CASE("origin orientation") {
  for (double t : {kPi / 3, kPi / 2, 2 * kPi / 3}) {
    const LatticeAngle th(t);
    const auto h = c_tilde_series(8, th, LengthRule::arcs(), H(0, 0));
    const auto v = c_tilde_series(8, th, LengthRule::arcs(), V(0, 0));
    for (int n = 0; n <= 8; ++n) CHECK(h[n] == doctest::Approx(v[n]).epsilon(1e-13));
  }
}

TEST_CASE("thread count does not change results") {
  const LatticeAngle th(kPi / 2);
  EnumerateOptions one, many;
  many.threads = 3;
  many.prefix_depth = 3;
  const auto a = c_tilde_series(9, th, LengthRule::arcs(), H(0, 0), one);
  const auto b = c_tilde_series(9, th, LengthRule::arcs(), H(0, 0), many);
  const auto c = c_tilde_series(9, th, LengthRule::arcs(), H(0, 0), many);
  for (std::size_t n = 0; n < a.size(); ++n) {
    CHECK(a[n] == doctest::Approx(b[n]).epsilon(1e-12));
    CHECK(b[n] == c[n]);
  }
}

TEST_CASE("budgets") {
  const WeightSet w = critical_weights(LatticeAngle(kPi / 2));
  EnumerateOptions o;
  o.max_length_cap = 10;
  CHECK_THROWS_AS(WalkEnumerator::free_lattice(H(0, 0), LengthRule::arcs(), w, 11, o), BudgetExceeded);
  EnumerateOptions few;
  few.max_walks = 50;
  CHECK_THROWS_AS(weight_sums_by_length(w, LengthRule::arcs(), 5, H(0, 0), few), BudgetExceeded);
}

TEST_CASE("length rules") {
  CHECK_THROWS(LengthRule{0, 1, 1}.validate());
  const LengthRule h = LengthRule::honeycomb();
  CHECK(h.length(StepKind::ArcTheta) == 1);
  CHECK(h.length(StepKind::ArcPiMinusTheta) == 2);
  CHECK(h.length(StepKind::Straight) == 2);
  const Walk walk = parse_walk(kFigureWalk);
  // five single theta-arcs, two more in the doubled rhombus, one (pi-theta)-arc, four straights
  CHECK(length_of(walk, h) == 7 + 2 + 8);
}
