#pragma once

// Scalar and vertical vector fields backed by parsed expressions, with
// parameters bound at construction.

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lagmech/exprdsl/evaluate.hpp"
#include "lagmech/exprdsl/expr.hpp"
#include "lagmech/numkernel/field.hpp"

namespace lagmech::exprdsl {

// Throws UnboundParameter naming the first parameter of `e` missing from `params`.
void require_bound(const Expr& e, const Params& params);

class DslScalarField final : public numkernel::ScalarFieldImpl<DslScalarField> {
 public:
  DslScalarField(Expr expr, Params params);

  std::size_t dim() const override { return expr_.dim(); }
  const Expr& expr() const { return expr_; }
  const Params& params() const { return params_; }

  template <class T>
  T evaluate(std::span<const T> x, std::span<const T> y) const {
    return exprdsl::evaluate<T>(expr_, x, y, params_);
  }

 private:
  Expr expr_;
  Params params_;
};

class DslVectorField final : public numkernel::VectorFieldImpl<DslVectorField> {
 public:
  // One expression per component V^i; all must share dimension n = components.size().
  DslVectorField(std::vector<Expr> components, Params params);

  std::size_t dim() const override { return components_.size(); }
  const std::vector<Expr>& components() const { return components_; }

  template <class T>
  std::vector<T> evaluate(std::span<const T> x, std::span<const T> y) const {
    std::vector<T> out;
    out.reserve(components_.size());
    for (const auto& c : components_) out.push_back(exprdsl::evaluate<T>(c, x, y, params_));
    return out;
  }

 private:
  std::vector<Expr> components_;
  Params params_;
};

std::shared_ptr<const DslScalarField> make_scalar_field(const std::string& source, std::size_t n,
                                                        const Params& params);
std::shared_ptr<const DslVectorField> make_vector_field(const std::vector<std::string>& sources,
                                                        std::size_t n, const Params& params);

}  // namespace lagmech::exprdsl
