#include "lagmech/exprdsl/dsl_field.hpp"

#include "lagmech/error.hpp"

namespace lagmech::exprdsl {

void require_bound(const Expr& e, const Params& params) {
  for (const auto& name : e.parameters())
    if (params.find(name) == params.end()) throw UnboundParameter(name);
}

DslScalarField::DslScalarField(Expr expr, Params params)
    : expr_(std::move(expr)), params_(std::move(params)) {
  require_bound(expr_, params_);
}

DslVectorField::DslVectorField(std::vector<Expr> components, Params params)
    : components_(std::move(components)), params_(std::move(params)) {
  for (const auto& c : components_) {
    if (c.dim() != components_.size())
      throw IndexError("force component dimension " + std::to_string(c.dim()) +
                       " does not match component count " + std::to_string(components_.size()));
    require_bound(c, params_);
  }
}

std::shared_ptr<const DslScalarField> make_scalar_field(const std::string& source, std::size_t n,
                                                        const Params& params) {
  return std::make_shared<DslScalarField>(parse(source, n), params);
}

std::shared_ptr<const DslVectorField> make_vector_field(const std::vector<std::string>& sources,
                                                        std::size_t n, const Params& params) {
  if (sources.size() != n)
    throw ConfigError("force needs " + std::to_string(n) + " components, got " +
                      std::to_string(sources.size()));
  std::vector<Expr> comps;
  comps.reserve(n);
  for (const auto& s : sources) comps.push_back(parse(s, n));
  return std::make_shared<DslVectorField>(std::move(comps), params);
}

}  // namespace lagmech::exprdsl
