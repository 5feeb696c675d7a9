#include <cmath>

#include "doctest.h"
#include "rhombsaw/observable.hpp"
#include "rhombsaw/weights.hpp"

using namespace rhombsaw;

namespace {
const double kThetas[] = {kPi / 3, 5 * kPi / 12, kPi / 2, 7 * kPi / 12, 2 * kPi / 3};

double max_abs_value(const ObservableTable& t) {
  double m = 0;
  for (const auto& [z, v] : t.entries()) m = std::max(m, std::abs(v));
  return m;
}
}  // namespace

TEST_CASE("rhombus relation with critical weights") {
  for (double t : kThetas) {
    const LatticeAngle th(t);
    for (auto [T, L] : {std::pair{1, 0}, std::pair{2, 1}, std::pair{3, 1}}) {
      const ObservableTable f = observable(ParallelogramDomain(T, L, th), 0.625, critical_weights(th));
      CHECK(max_cr_residual(f) < 1e-10);
      CHECK(f.at(f.origin()) == Complex(1.0, 0.0));
    }
  }
}

TEST_CASE("rhombus relation for other spins") {
  const LatticeAngle th(kPi / 2);
  const ParallelogramDomain d(2, 1, th);
  for (double sg : {-0.375, 0.125, 0.375, 0.875, 1.125}) {
    const ObservableTable f = observable(d, sg, sigma_weights(th, sg));
    CHECK(max_cr_residual(f) <= 1e-12 * std::max(1.0, max_abs_value(f)));
  }
  for (double u1 : {0.2, 0.3, 0.7}) {
    const ObservableTable f = observable(d, 1.0, sigma_one_family(u1, th));
    CHECK(max_cr_residual(f) < 1e-10);
  }
}

TEST_CASE("perturbed weights break the rhombus relation") {
  const LatticeAngle th(kPi / 2);
  const ParallelogramDomain d(2, 1, th);
  const WeightSet w = critical_weights(th);
  CHECK(max_cr_residual(observable(d, 0.625, perturbed(w, 0, 0.01))) > 1e-4);
  CHECK(max_cr_residual(observable(d, 0.5, w)) > 1e-4);
}

TEST_CASE("observable lookups") {
  const LatticeAngle th(kPi / 2);
  const ObservableTable f = observable(ParallelogramDomain(1, 0, th), 0.625, critical_weights(th));
  CHECK_THROWS_AS(f.at(H(5, 5)), std::out_of_range);
  CHECK_THROWS_AS(cr_residual(f, Rhombus{3, 3}), std::out_of_range);
  CHECK(f.entries().size() == 4);
}

TEST_CASE("boundary sum matches the parallelogram identity") {
  for (double t : kThetas) {
    const LatticeAngle th(t);
    const ParallelogramDomain d(2, 1, th);
    const ObservableTable f = observable(d, 0.625, critical_weights(th));
    const StripSums s = strip_sums(2, 1, critical_weights(th).u1, th);
    CHECK(boundary_relation(f).real() == doctest::Approx(parallelogram_lhs(s, th) - 1.0).epsilon(1e-9));
    CHECK(std::abs(boundary_relation(f).real()) < 1e-10);
  }
}

TEST_CASE("parallelogram identity") {
  CHECK(parallelogram_identity_residual(3, 1, LatticeAngle(kPi / 3)) < 1e-10);
  for (double t : kThetas) {
    const LatticeAngle th(t);
    for (int T = 1; T <= 4; ++T) {
      for (int L = 0; (2 * L + 1) * T <= 6; ++L) CHECK(parallelogram_identity_residual(T, L, th) < 1e-10);
    }
  }
  const LatticeAngle th(kPi / 2);
  const StripSums off = strip_sums(2, 1, 0.9 * critical_weights(th).u1, th);
  CHECK(std::abs(parallelogram_lhs(off, th) - 1.0) > 1e-3);
}

TEST_CASE("coefficients and sums are positive and bounded") {
  for (int k = 0; k <= 12; ++k) {
    const LatticeAngle th(kPi / 3 + k * kPi / 36);
    const auto c = parallelogram_coefficients(th);
    CHECK(c.alpha > 0);
    CHECK(c.delta > 0);
    CHECK(c.epsilon > 0);
  }
  for (double t : kThetas) {
    const LatticeAngle th(t);
    const StripSums s = strip_sums(2, 1, critical_weights(th).u1, th);
    for (double v : {s.A, s.B, s.D, s.E}) CHECK(v >= 0);
    CHECK(s.A <= 1);
    CHECK(s.B <= 1);
  }
}

TEST_CASE("strip limits") {
  const LatticeAngle th(kPi / 2);
  const double xc = critical_weights(th).u1;
  const StripLimits one = strip_limits(1, xc, th, 8);
  CHECK(one.tail_strictly_decreasing());
  CHECK(one.growth_holds());
  CHECK(one.monotone_in_L());
  CHECK(one.tail.back() < 1e-3);

  const StripLimits two = strip_limits(2, xc, th, 4);
  CHECK(two.tail_strictly_decreasing());
  CHECK(two.growth_holds());
  const auto c = parallelogram_coefficients(th);
  const StripSums& last = two.by_L.back();
  CHECK(two.strip_relation_defect == doctest::Approx(-(c.delta * last.D + c.epsilon * last.E)));
  CHECK_THROWS_AS(strip_limits(1, 1.1 * xc, th, 2), DomainError);
}

TEST_CASE("bridge bounds") {
  const LatticeAngle th(kPi / 2);
  const BridgeReport r = bridge_chain_check(th, {8, 4, 3});
  const WeightSet w = critical_weights(th);
  CHECK(r.c == doctest::Approx(w.u1 * w.u2 / parallelogram_coefficients(th).alpha));
  CHECK(r.harmonic_holds());
  CHECK(r.recursion_holds());
  CHECK(r.decay_holds());
  for (std::size_t k = 0; k < r.B.size(); ++k) CHECK(r.B[k] - r.harmonic_bound[k] > 0);
}

TEST_CASE("observable does not depend on the thread count") {
  const LatticeAngle th(5 * kPi / 12);
  const ParallelogramDomain d(2, 1, th);
  EnumerateOptions many;
  many.threads = 4;
  many.prefix_depth = 3;
  const auto a = observable(d, 0.625, critical_weights(th), many).entries();
  const auto b = observable(d, 0.625, critical_weights(th), many).entries();
  const auto c = observable(d, 0.625, critical_weights(th)).entries();
  REQUIRE(a.size() == c.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].second == b[k].second);
    CHECK(std::abs(a[k].second - c[k].second) < 1e-14);
  }
}
