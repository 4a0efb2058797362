#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include "lagmech/exprdsl/expr.hpp"
#include "lagmech/numkernel/field.hpp"

namespace lagmech::mechanics {

using numkernel::PhasePoint;
using numkernel::ScalarField;
using numkernel::VectorField;

// Σ = (M, L, V) on a single chart of R^n.
struct MechanicalSystem {
  std::string name;
  std::size_t n = 0;
  std::shared_ptr<const ScalarField> lagrangian;
  std::shared_ptr<const VectorField> force;  // vertical components V^i
  exprdsl::Params params;
  bool slit = false;  // defined on TM minus the zero section only

  const ScalarField& L() const { return *lagrangian; }
  const VectorField& V() const { return *force; }
};

// Throws ConfigError when the field dimensions disagree with n.
void validate(const MechanicalSystem& sys);

}  // namespace lagmech::mechanics
