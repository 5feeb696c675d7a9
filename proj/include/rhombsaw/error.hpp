#pragma once

#include <stdexcept>
#include <string>

namespace rhombsaw {

// Invalid parameter (theta outside the admissible range, sigma off the
// solvable locus, vanishing denominators).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// An enumeration would exceed its configured step or walk budget.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Internal geometric inconsistency (a step that cannot occur on the lattice).
class GeometryError : public std::logic_error {
 public:
  explicit GeometryError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace rhombsaw
