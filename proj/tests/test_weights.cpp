#include <cmath>

#include "doctest.h"
#include "rhombsaw/error.hpp"
#include "rhombsaw/weights.hpp"

using namespace rhombsaw;

namespace {

std::vector<double> theta_grid(int points) {
  std::vector<double> out;
  for (int k = 0; k < points; ++k) out.push_back(kPi / 3 + (kPi / 3) * k / (points - 1));
  return out;
}

}  // namespace

TEST_CASE("the three closed forms agree") {
  for (double t : {kPi / 3, 5 * kPi / 12, kPi / 2, 7 * kPi / 12, 2 * kPi / 3}) {
    const LatticeAngle th(t);
    const WeightSet c = critical_weights(th);
    CHECK(c.max_abs_difference(sigma_weights(th, 0.625)) < 1e-12);
    CHECK(c.max_abs_difference(on_weights(th, -0.375).weights) < 1e-12);
  }
}

TEST_CASE("constants at pi/2 and pi/3") {
  const WeightSet r = critical_weights(LatticeAngle(kPi / 2));
  const double expected = std::sqrt(3 + 0.5 * std::sqrt(26 + 7 * std::sqrt(2.0)));
  CHECK(std::abs(1 / r.u1 - expected) < 1e-9);
  CHECK(1 / r.u1 == doctest::Approx(2.448).epsilon(1e-3));

  const WeightSet h = critical_weights(LatticeAngle(kPi / 3));
  const double u1 = 1 / std::sqrt(2 + std::sqrt(2.0));
  CHECK(std::abs(h.u1 - u1) < 1e-12);
  CHECK(std::abs(h.u2 - u1 * u1) < 1e-12);
  CHECK(std::abs(h.v - u1 * u1) < 1e-12);
  CHECK(std::abs(h.w1 - u1 * u1) < 1e-12);
  CHECK(std::abs(h.w2) < 1e-12);
}

TEST_CASE("theta and pi - theta swap the arc weights") {
  for (double t : theta_grid(7)) {
    for (const auto& [a, b] :
         {std::pair{critical_weights(LatticeAngle(t)), critical_weights(LatticeAngle(kPi - t))},
          std::pair{on_weights(LatticeAngle(t), 0.5).weights, on_weights(LatticeAngle(kPi - t), 0.5).weights}}) {
      CHECK(a.u1 == doctest::Approx(b.u2));
      CHECK(a.w1 == doctest::Approx(b.w2).epsilon(1e-9));
      CHECK(a.v == doctest::Approx(b.v));
    }
  }
}

TEST_CASE("positivity and the two inequalities") {
  for (double t : theta_grid(13)) {
    const WeightSet w = critical_weights(LatticeAngle(t));
    for (double x : w.as_array()) CHECK(x > -1e-15);
    CHECK(w.u1 * w.u1 >= w.w1 - 1e-15);
    CHECK(w.u2 * w.u2 >= w.w2 - 1e-15);
  }
  for (double t : {kPi / 4, 3 * kPi / 4}) {
    const WeightSet w = critical_weights(LatticeAngle::unrestricted(t));
    const bool nine = w.u1 * w.u1 >= w.w1, ten = w.u2 * w.u2 >= w.w2;
    CHECK(nine != ten);
  }
  const WeightSet q = critical_weights(LatticeAngle::unrestricted(kPi / 4));
  CHECK_FALSE(q.u1 * q.u1 >= q.w1);
}

TEST_CASE("local relations vanish at the declared spin") {
  for (double t : theta_grid(13)) {
    const LatticeAngle th(t);
    CHECK(local_residuals(sigma_weights(th, 0.625), 0.625, th).max_abs() < 1e-12);
    for (double u1 : {0.2, 0.3, 0.5}) {
      CHECK(local_residuals(sigma_one_family(u1, th), 1.0, th).max_abs() < 1e-12);
    }
    for (double sg : {0.125, 0.375, 0.875, 1.125}) {
      const WeightSet w = sigma_weights(th, sg);
      CHECK(local_residuals(w, sg, th).max_abs() < 1e-11 * std::max(1.0, std::abs(w.u1)));
    }
  }
}

TEST_CASE("perturbed weights break the local relations") {
  const LatticeAngle th(kPi / 2);
  const WeightSet w = critical_weights(th);
  CHECK(local_residuals(perturbed(w, 0, 0.01), 0.625, th).max_abs() > 1e-4);
  for (int k = 0; k < 5; ++k) {
    CHECK(local_residuals(perturbed(w, k, 1e-3), 0.625, th).max_abs() > 1e-5);
  }
}

TEST_CASE("sigma family rejects other spins") {
  const LatticeAngle th(kPi / 2);
  CHECK_THROWS_AS(sigma_weights(th, 0.5), DomainError);
  CHECK_THROWS_AS(sigma_weights(th, 0.7), DomainError);
}

TEST_CASE("O(n) family") {
  CHECK(loop_fugacity(-0.375) == 0.0);
  CHECK(loop_fugacity(0.5) == doctest::Approx(1.0));
  CHECK(loop_fugacity(0.75) == doctest::Approx(2.0));
  for (double s : {-0.375, -0.2, 0.1, 0.5, 0.75}) {
    const WeightSet w = on_weights(LatticeAngle(kPi / 3), s).weights;
    CHECK(std::abs(w.w2) < 1e-12);
    CHECK(w.u2 == doctest::Approx(w.u1 * w.u1));
    CHECK(w.v == doctest::Approx(w.u1 * w.u1));
    CHECK(w.w1 == doctest::Approx(w.u1 * w.u1));
  }
  CHECK_THROWS_AS(on_weights(LatticeAngle(kPi / 2), 0.0), DomainError);
}

TEST_CASE("solver reproduces the closed forms") {
  const LatticeAngle th(kPi / 2);
  for (double sg : {0.375, 0.625, 0.875}) {
    const auto s = solve_local_system(sg, th);
    REQUIRE(s.solution.has_value());
    CHECK(s.rank == 5);
    CHECK(s.solution->max_abs_difference(sigma_weights(th, sg)) < 1e-9);
  }
  CHECK(solve_local_system(0.625, th).residual_norm < 1e-12);
}

TEST_CASE("solver at sigma = 1 finds a one-parameter family") {
  const auto s = solve_local_system(1.0, LatticeAngle(kPi / 2));
  CHECK(s.nullity == 1);
  CHECK(s.rank == 4);
  const auto& n = s.null_direction;
  // u1 + u2 stays fixed, w1 follows u1, w2 follows u2, v stays 0
  CHECK(std::abs(n[0] + n[1]) < 1e-9);
  CHECK(std::abs(n[2]) < 1e-9);
  CHECK(std::abs(n[3] - n[0]) < 1e-9);
  CHECK(std::abs(n[4] - n[1]) < 1e-9);
  const auto& x = s.least_squares;
  CHECK(x[0] + x[1] == doctest::Approx(1.0));
  CHECK(std::abs(x[2]) < 1e-9);
}

TEST_CASE("solver finds no weights at sigma = 0.7") {
  const auto s = solve_local_system(0.7, LatticeAngle(kPi / 2));
  CHECK_FALSE(s.solution.has_value());
  CHECK(s.residual_norm > 1e-6);
}
